#pragma once

// Internal: linear maps acting on a few adjacent tensor legs, and helpers
// that run fixed sequences of them. Used by the axiom checks and by the
// diagram evaluator.

#include <vector>

#include "spinsum/algebra.hpp"
#include "spinsum/tensor.hpp"

namespace spinsum::detail {

struct LegOp {
  std::size_t dim = 0;
  std::size_t legs_in = 0;
  std::size_t legs_out = 0;
  bool sparse = true;
  SparseOperator sparse_op;
  Mat dense_op;
};

// From a tensor whose axes are the out legs followed by the in legs.
LegOp make_leg_op(const Tensor& t, std::size_t dim, std::size_t legs_out, std::size_t legs_in);

LegOp mult_op(const AlgebraData& alg);          // 2 -> 1
LegOp cup_op(const Mat& copairing);             // 0 -> 2
LegOp cap_op(const Mat& pairing);               // 2 -> 0
LegOp unit_op(const AlgebraData& alg);          // 0 -> 1
LegOp counit_op(const AlgebraData& alg);        // 1 -> 0
LegOp matrix_op(const Mat& m);                  // 1 -> 1, m acting on coordinates
LegOp crossing_op(const Tensor& lambda);        // 2 -> 2

Tensor apply(const LegOp& op, const Tensor& state, std::size_t width, std::size_t at);

struct Step {
  const LegOp* op;
  std::size_t at;
};

// Run steps on a state of the given leg width; returns the final state.
Tensor run(const std::vector<Step>& steps, Tensor state, std::size_t width);

// The identity on A^{width} restricted to basis columns [first, last), laid
// out as [d]^width x (last - first).
Tensor identity_columns(std::size_t dim, std::size_t width, std::size_t first, std::size_t last);

// Relative residual between two programs mapping A^{width_in} to the same
// space, evaluated on the identity in column chunks to bound memory.
double program_residual(std::size_t dim, std::size_t width_in, const std::vector<Step>& lhs,
                        const std::vector<Step>& rhs);

// The full matrix of a program A^{width_in} -> A^{width_out} (rows out, cols in).
Mat program_matrix(std::size_t dim, std::size_t width_in, const std::vector<Step>& steps);

}  // namespace spinsum::detail
