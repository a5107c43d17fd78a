#include "legops.hpp"

#include <algorithm>

#include "spinsum/error.hpp"

namespace spinsum::detail {

LegOp make_leg_op(const Tensor& t, std::size_t dim, std::size_t legs_out, std::size_t legs_in) {
  LegOp op;
  op.dim = dim;
  op.legs_in = legs_in;
  op.legs_out = legs_out;
  op.sparse_op = SparseOperator::from_tensor(t, dim, legs_out, legs_in);
  // Dense GEMM wins once a sizable fraction of entries is nonzero.
  op.sparse = op.sparse_op.entries.size() * 4 <= t.size();
  if (!op.sparse) op.dense_op = t.to_matrix(ipow(dim, legs_out), ipow(dim, legs_in));
  return op;
}

LegOp mult_op(const AlgebraData& alg) {
  const std::size_t d = alg.dim;
  Tensor t({d, d, d});
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) t(c, a, b) = alg.mult(a, b, c);
  return make_leg_op(t, d, 1, 2);
}

LegOp cup_op(const Mat& copairing) {
  return make_leg_op(Tensor::from_matrix(copairing), copairing.rows(), 2, 0);
}

LegOp cap_op(const Mat& pairing) {
  return make_leg_op(Tensor::from_matrix(pairing), pairing.rows(), 0, 2);
}

LegOp unit_op(const AlgebraData& alg) {
  return make_leg_op(Tensor::from_vector(alg.unit), alg.dim, 1, 0);
}

LegOp counit_op(const AlgebraData& alg) {
  return make_leg_op(Tensor::from_vector(alg.counit), alg.dim, 0, 1);
}

LegOp matrix_op(const Mat& m) { return make_leg_op(Tensor::from_matrix(m), m.rows(), 1, 1); }

LegOp crossing_op(const Tensor& lambda) {
  if (lambda.rank() != 4) throw Error(ErrorKind::ShapeMismatch, "crossing tensor must be rank 4");
  return make_leg_op(lambda, lambda.extent(0), 2, 2);
}

Tensor apply(const LegOp& op, const Tensor& state, std::size_t width, std::size_t at) {
  if (op.sparse) return apply_on_legs(op.sparse_op, state, width, at);
  return apply_on_legs_dense(op.dense_op, op.dim, op.legs_out, op.legs_in, state, width, at);
}

Tensor run(const std::vector<Step>& steps, Tensor state, std::size_t width) {
  for (const Step& s : steps) {
    state = apply(*s.op, state, width, s.at);
    width = width - s.op->legs_in + s.op->legs_out;
  }
  return state;
}

Tensor identity_columns(std::size_t dim, std::size_t width, std::size_t first, std::size_t last) {
  const std::size_t cols = last - first;
  std::vector<std::size_t> shape(width, dim);
  shape.push_back(cols);
  Tensor t(shape);
  for (std::size_t c = first; c < last; ++c) t[c * cols + (c - first)] = 1.0;
  return t;
}

namespace {

// A state on A^width as a list of (multi-index, coefficient); leg 0 is the
// most significant digit.
using SparseState = std::vector<std::pair<std::size_t, Scalar>>;

// Operator entries grouped by input index.
struct Adjacency {
  std::vector<std::size_t> start;
  std::vector<std::pair<std::size_t, Scalar>> out;
};

Adjacency adjacency(const LegOp& op) {
  const std::size_t n_in = ipow(op.dim, op.legs_in);
  Adjacency adj;
  adj.start.assign(n_in + 1, 0);
  for (const auto& e : op.sparse_op.entries) ++adj.start[e.in + 1];
  for (std::size_t i = 0; i < n_in; ++i) adj.start[i + 1] += adj.start[i];
  adj.out.resize(op.sparse_op.entries.size());
  std::vector<std::size_t> fill(adj.start.begin(), adj.start.end() - 1);
  for (const auto& e : op.sparse_op.entries) adj.out[fill[e.in]++] = {e.out, e.value};
  return adj;
}

void normalize(SparseState& s) {
  std::sort(s.begin(), s.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < s.size(); ++r) {
    if (w > 0 && s[w - 1].first == s[r].first)
      s[w - 1].second += s[r].second;
    else
      s[w++] = s[r];
  }
  s.resize(w);
}

struct SparseProgram {
  std::size_t dim;
  const std::vector<Step>& steps;
  std::vector<Adjacency> adj;

  SparseProgram(std::size_t d, const std::vector<Step>& st) : dim(d), steps(st) {
    for (const Step& s : steps) adj.push_back(adjacency(*s.op));
  }

  SparseState run(SparseState state, std::size_t width) const {
    SparseState next;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const LegOp& op = *steps[k].op;
      const std::size_t at = steps[k].at;
      if (at + op.legs_in > width) throw Error(ErrorKind::ArityMismatch, "operator legs exceed width");
      const std::size_t right = ipow(dim, width - at - op.legs_in);
      const std::size_t mid_in = ipow(dim, op.legs_in), mid_out = ipow(dim, op.legs_out);
      next.clear();
      for (const auto& [idx, v] : state) {
        const std::size_t r = idx % right, m = (idx / right) % mid_in, l = idx / right / mid_in;
        for (std::size_t e = adj[k].start[m]; e < adj[k].start[m + 1]; ++e) {
          const auto& [o, w] = adj[k].out[e];
          next.emplace_back((l * mid_out + o) * right + r, w * v);
        }
      }
      normalize(next);
      std::swap(state, next);
      width = width - op.legs_in + op.legs_out;
    }
    return state;
  }

  std::size_t out_width(std::size_t width) const {
    for (const Step& s : steps) width = width - s.op->legs_in + s.op->legs_out;
    return width;
  }
};

}  // namespace

double program_residual(std::size_t dim, std::size_t width_in, const std::vector<Step>& lhs,
                        const std::vector<Step>& rhs) {
  // Basis states stay sparse under the generators, so run one input column at a time.
  const SparseProgram pl(dim, lhs), pr(dim, rhs);
  if (pl.out_width(width_in) != pr.out_width(width_in))
    throw Error(ErrorKind::ArityMismatch, "programs have different outputs");
  const std::size_t n_in = ipow(dim, width_in);
  double diff = 0.0, scale = 1.0;
  for (std::size_t c = 0; c < n_in; ++c) {
    const SparseState a = pl.run({{c, Scalar(1.0)}}, width_in);
    const SparseState b = pr.run({{c, Scalar(1.0)}}, width_in);
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      Scalar x = 0, y = 0;
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        x = a[i++].second;
      } else if (i == a.size() || b[j].first < a[i].first) {
        y = b[j++].second;
      } else {
        x = a[i++].second;
        y = b[j++].second;
      }
      diff = std::max(diff, std::abs(x - y));
      scale = std::max({scale, std::abs(x), std::abs(y)});
    }
  }
  return diff / scale;
}

Mat program_matrix(std::size_t dim, std::size_t width_in, const std::vector<Step>& steps) {
  const std::size_t n_in = ipow(dim, width_in);
  const Tensor out = run(steps, identity_columns(dim, width_in, 0, n_in), width_in);
  return out.to_matrix(out.size() / n_in, n_in);
}

}  // namespace spinsum::detail
