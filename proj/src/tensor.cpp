#include "spinsum/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spinsum/error.hpp"
#include "spinsum/kernels.hpp"

namespace spinsum {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::size_t element_count(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

Tensor::Tensor(std::vector<std::size_t> shape, Scalar fill)
    : shape_(std::move(shape)), data_(element_count(shape_), fill) {}

Tensor Tensor::scalar(Scalar value) {
  Tensor t(std::vector<std::size_t>{});
  t.data_[0] = value;
  return t;
}

Tensor Tensor::from_matrix(const Mat& m) {
  Tensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
  return t;
}

Tensor Tensor::from_vector(const Vec& v) {
  Tensor t({static_cast<std::size_t>(v.size())});
  for (Eigen::Index i = 0; i < v.size(); ++i) t[i] = v(i);
  return t;
}

std::size_t Tensor::offset(std::initializer_list<std::size_t> idx) const {
  return offset(std::span<const std::size_t>(idx.begin(), idx.size()));
}

std::size_t Tensor::offset(std::span<const std::size_t> idx) const {
  if (idx.size() != shape_.size())
    throw Error(ErrorKind::DimensionMismatch, "index rank does not match tensor rank");
  std::size_t off = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] >= shape_[a]) throw Error(ErrorKind::StateOutOfRange, "tensor index out of range");
    off = off * shape_[a] + idx[a];
  }
  return off;
}

Tensor Tensor::reshaped(std::vector<std::size_t> shape) const {
  if (element_count(shape) != data_.size())
    throw Error(ErrorKind::ShapeMismatch, "reshape changes element count");
  Tensor t;
  t.shape_ = std::move(shape);
  t.data_ = data_;
  return t;
}

Mat Tensor::to_matrix(std::size_t rows, std::size_t cols) const {
  if (rows * cols != data_.size())
    throw Error(ErrorKind::ShapeMismatch, "matrix view changes element count");
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = data_[i * cols + j];
  return m;
}

double Tensor::max_abs() const {
  double worst = 0.0;
  for (const Scalar& v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (other.data_.size() != data_.size()) throw Error(ErrorKind::ShapeMismatch, "tensor +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  if (other.data_.size() != data_.size()) throw Error(ErrorKind::ShapeMismatch, "tensor -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(Scalar s) {
  for (Scalar& v : data_) v *= s;
  return *this;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
Tensor operator*(Scalar s, Tensor a) { return a *= s; }

Tensor permute(const Tensor& t, std::span<const std::size_t> perm) {
  const std::size_t r = t.rank();
  if (perm.size() != r) throw Error(ErrorKind::ShapeMismatch, "permutation rank");
  std::vector<std::size_t> out_shape(r);
  for (std::size_t i = 0; i < r; ++i) out_shape[i] = t.extent(perm[i]);
  Tensor out(out_shape);
  if (r == 0) {
    out[0] = t[0];
    return out;
  }
  // Strides of the input, viewed in output axis order.
  std::vector<std::size_t> in_stride(r);
  {
    std::vector<std::size_t> s(r, 1);
    for (std::size_t a = r - 1; a > 0; --a) s[a - 1] = s[a] * t.extent(a);
    for (std::size_t i = 0; i < r; ++i) in_stride[i] = s[perm[i]];
  }
  std::vector<std::size_t> idx(r, 0);
  std::size_t src = 0;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out[flat] = t[src];
    for (std::size_t a = r; a-- > 0;) {
      if (++idx[a] < out_shape[a]) {
        src += in_stride[a];
        break;
      }
      src -= in_stride[a] * (out_shape[a] - 1);
      idx[a] = 0;
    }
  }
  return out;
}

Tensor tensordot(const Tensor& a, const Tensor& b, std::span<const std::size_t> axes_a,
                 std::span<const std::size_t> axes_b) {
  if (axes_a.size() != axes_b.size()) throw Error(ErrorKind::ShapeMismatch, "tensordot axes");
  std::vector<bool> used_a(a.rank(), false), used_b(b.rank(), false);
  std::size_t k = 1;
  for (std::size_t i = 0; i < axes_a.size(); ++i) {
    if (a.extent(axes_a[i]) != b.extent(axes_b[i]))
      throw Error(ErrorKind::ShapeMismatch, "tensordot extents differ");
    used_a[axes_a[i]] = true;
    used_b[axes_b[i]] = true;
    k *= a.extent(axes_a[i]);
  }
  std::vector<std::size_t> perm_a, perm_b, out_shape;
  std::size_t m = 1, n = 1;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!used_a[i]) {
      perm_a.push_back(i);
      out_shape.push_back(a.extent(i));
      m *= a.extent(i);
    }
  perm_a.insert(perm_a.end(), axes_a.begin(), axes_a.end());
  perm_b.assign(axes_b.begin(), axes_b.end());
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (!used_b[i]) {
      perm_b.push_back(i);
      out_shape.push_back(b.extent(i));
      n *= b.extent(i);
    }
  const Tensor pa = permute(a, perm_a);
  const Tensor pb = permute(b, perm_b);
  Tensor out(out_shape);
  kernels::cgemm(pa.data(), pb.data(), out.data(), m, k, n);
  return out;
}

Tensor trace_pair(const Tensor& t, std::size_t axis_i, std::size_t axis_j, const Mat& w) {
  if (axis_i == axis_j) throw Error(ErrorKind::ShapeMismatch, "trace_pair needs two axes");
  const std::size_t di = t.extent(axis_i), dj = t.extent(axis_j);
  std::vector<std::size_t> perm;
  std::vector<std::size_t> out_shape;
  for (std::size_t a = 0; a < t.rank(); ++a)
    if (a != axis_i && a != axis_j) {
      perm.push_back(a);
      out_shape.push_back(t.extent(a));
    }
  perm.push_back(axis_i);
  perm.push_back(axis_j);
  const Tensor p = permute(t, perm);
  Tensor out(out_shape);
  const std::size_t block = di * dj;
  for (std::size_t r = 0; r < out.size(); ++r) {
    Scalar acc{};
    const Scalar* src = p.data() + r * block;
    for (std::size_t i = 0; i < di; ++i)
      for (std::size_t j = 0; j < dj; ++j) acc += w(i, j) * src[i * dj + j];
    out[r] = acc;
  }
  return out;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "max_abs_diff sizes differ");
  return kernels::max_abs_diff(a.size(), a.data(), b.data());
}

double relative_residual(const Tensor& a, const Tensor& b) {
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  return max_abs_diff(a, b) / scale;
}

double relative_residual(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch, "relative_residual shapes differ");
  const double scale =
      std::max({1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0});
  return a.size() ? (a - b).cwiseAbs().maxCoeff() / scale : 0.0;
}

double relative_residual(const Vec& a, const Vec& b) {
  return relative_residual(Mat(a), Mat(b));
}

SparseOperator SparseOperator::from_tensor(const Tensor& t, std::size_t dim, std::size_t legs_out,
                                           std::size_t legs_in) {
  const std::size_t rows = ipow(dim, legs_out), cols = ipow(dim, legs_in);
  if (t.size() != rows * cols) throw Error(ErrorKind::ShapeMismatch, "operator tensor size");
  SparseOperator op;
  op.dim = dim;
  op.legs_in = legs_in;
  op.legs_out = legs_out;
  for (std::size_t o = 0; o < rows; ++o)
    for (std::size_t i = 0; i < cols; ++i) {
      const Scalar v = t[o * cols + i];
      if (v != Scalar{}) op.entries.push_back({o, i, v});
    }
  return op;
}

namespace {

struct LegSplit {
  std::size_t left, mid_in, mid_out, right;
};

LegSplit split_legs(std::size_t dim, std::size_t legs_in, std::size_t legs_out,
                    const Tensor& state, std::size_t width, std::size_t at) {
  if (at + legs_in > width) throw Error(ErrorKind::ArityMismatch, "operator legs exceed width");
  const std::size_t lead = ipow(dim, width);
  if (lead == 0 || state.size() % lead != 0)
    throw Error(ErrorKind::ArityMismatch, "state size is not a multiple of dim^width");
  const std::size_t cols = state.size() / lead;
  return {ipow(dim, at), ipow(dim, legs_in), ipow(dim, legs_out),
          ipow(dim, width - at - legs_in) * cols};
}

std::vector<std::size_t> result_shape(std::size_t dim, std::size_t width, std::size_t cols) {
  std::vector<std::size_t> shape(width, dim);
  if (cols != 1) shape.push_back(cols);
  return shape;
}

}  // namespace

Tensor apply_on_legs(const SparseOperator& op, const Tensor& state, std::size_t width,
                     std::size_t at) {
  const LegSplit s = split_legs(op.dim, op.legs_in, op.legs_out, state, width, at);
  const std::size_t new_width = width - op.legs_in + op.legs_out;
  const std::size_t cols = state.size() / ipow(op.dim, width);
  Tensor out(result_shape(op.dim, new_width, cols));
  for (std::size_t l = 0; l < s.left; ++l) {
    const Scalar* in_base = state.data() + l * s.mid_in * s.right;
    Scalar* out_base = out.data() + l * s.mid_out * s.right;
    for (const auto& e : op.entries)
      kernels::caxpy(s.right, e.value, in_base + e.in * s.right, out_base + e.out * s.right);
  }
  return out;
}

Tensor apply_on_legs_dense(const Mat& op, std::size_t dim, std::size_t legs_out,
                           std::size_t legs_in, const Tensor& state, std::size_t width,
                           std::size_t at) {
  const LegSplit s = split_legs(dim, legs_in, legs_out, state, width, at);
  if (static_cast<std::size_t>(op.rows()) != s.mid_out ||
      static_cast<std::size_t>(op.cols()) != s.mid_in)
    throw Error(ErrorKind::ShapeMismatch, "dense operator shape");
  std::vector<Scalar> rowmajor(s.mid_out * s.mid_in);
  for (std::size_t o = 0; o < s.mid_out; ++o)
    for (std::size_t i = 0; i < s.mid_in; ++i) rowmajor[o * s.mid_in + i] = op(o, i);
  const std::size_t new_width = width - legs_in + legs_out;
  const std::size_t cols = state.size() / ipow(dim, width);
  Tensor out(result_shape(dim, new_width, cols));
  for (std::size_t l = 0; l < s.left; ++l)
    kernels::cgemm(rowmajor.data(), state.data() + l * s.mid_in * s.right,
                   out.data() + l * s.mid_out * s.right, s.mid_out, s.mid_in, s.right);
  return out;
}

}  // namespace spinsum
