#pragma once

// Dense row-major complex tensors and the handful of contraction primitives
// the rest of the library is written against.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spinsum {

using Scalar = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, Scalar fill = Scalar{});

  static Tensor scalar(Scalar value);
  static Tensor from_matrix(const Mat& m);
  static Tensor from_vector(const Vec& v);

  std::span<const std::size_t> shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::size_t extent(std::size_t axis) const { return shape_.at(axis); }

  Scalar* data() { return data_.data(); }
  const Scalar* data() const { return data_.data(); }
  std::span<Scalar> values() { return data_; }
  std::span<const Scalar> values() const { return data_; }

  Scalar& operator[](std::size_t flat) { return data_[flat]; }
  const Scalar& operator[](std::size_t flat) const { return data_[flat]; }

  template <class... Idx>
  Scalar& operator()(Idx... idx) {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }
  template <class... Idx>
  const Scalar& operator()(Idx... idx) const {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  std::size_t offset(std::initializer_list<std::size_t> idx) const;
  std::size_t offset(std::span<const std::size_t> idx) const;

  // Same data, new shape with equal element count.
  Tensor reshaped(std::vector<std::size_t> shape) const;
  Mat to_matrix(std::size_t rows, std::size_t cols) const;

  double max_abs() const;
  bool all_finite() const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(Scalar s);

 private:
  std::vector<std::size_t> shape_;
  std::vector<Scalar> data_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator*(Scalar s, Tensor a);

std::size_t element_count(std::span<const std::size_t> shape);

// out axis i is input axis perm[i].
Tensor permute(const Tensor& t, std::span<const std::size_t> perm);

// Contract axes_a of a with axes_b of b (pairwise). Result axes are the free
// axes of a in order, followed by the free axes of b in order.
Tensor tensordot(const Tensor& a, const Tensor& b, std::span<const std::size_t> axes_a,
                 std::span<const std::size_t> axes_b);

// Sum over the diagonal of two axes of one tensor, weighted by w(i, j).
Tensor trace_pair(const Tensor& t, std::size_t axis_i, std::size_t axis_j, const Mat& w);

double max_abs_diff(const Tensor& a, const Tensor& b);

// max|a-b| / max(1, max|a|, max|b|); the library-wide residual measure.
double relative_residual(const Tensor& a, const Tensor& b);
double relative_residual(const Mat& a, const Mat& b);
double relative_residual(const Vec& a, const Vec& b);

// A linear map between tensor powers of a d-dimensional space, stored
// sparsely: out[o] += value * in[i] over flat multi-indices.
struct SparseOperator {
  struct Entry {
    std::size_t out;
    std::size_t in;
    Scalar value;
  };
  std::size_t dim = 0;
  std::size_t legs_in = 0;
  std::size_t legs_out = 0;
  std::vector<Entry> entries;

  // From a dense tensor with out-legs first, then in-legs.
  static SparseOperator from_tensor(const Tensor& t, std::size_t dim, std::size_t legs_out,
                                    std::size_t legs_in);
};

// Treat `state` as shape [d]*width x cols (cols = trailing flat extent) and
// replace legs [at, at+op.legs_in) with op's output legs.
Tensor apply_on_legs(const SparseOperator& op, const Tensor& state, std::size_t width,
                     std::size_t at);

// Dense variant of apply_on_legs using the GEMM kernel.
Tensor apply_on_legs_dense(const Mat& op, std::size_t dim, std::size_t legs_out,
                           std::size_t legs_in, const Tensor& state, std::size_t width,
                           std::size_t at);

std::size_t ipow(std::size_t base, std::size_t exp);

}  // namespace spinsum
