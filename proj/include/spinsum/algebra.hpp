#pragma once

#include <string>
#include <vector>

#include "spinsum/tensor.hpp"

namespace spinsum {

inline constexpr double kDefaultTol = 1e-9;

// State sum data (C, B, R) plus the maps derived from it. Immutable once
// built; every function taking an AlgebraData is safe to call concurrently.
//
// Index conventions:
//   C(a,b,c)     = C_abc, the triangle amplitude
//   B(a,b)       = B^{ab}, the copairing B = sum B^{ab} e_a (x) e_b
//   Binv(a,b)    = B_ab, with Binv * B = 1
//   mult(a,b,c)  = C_ab^c, so e_a e_b = sum_c mult(a,b,c) e_c
//   nakayama     = column matrix of sigma: sigma(e_b) = sum_a nakayama(a,b) e_a
struct AlgebraData {
  std::size_t dim = 0;
  Tensor C;
  Mat B;
  Scalar R{1.0, 0.0};
  std::vector<std::string> labels;

  Mat Binv;
  Tensor mult;
  Vec beta;      // m(B)
  Vec unit;      // the multiplicative unit when one exists, otherwise R*beta
  bool unital = false;
  Vec counit;    // epsilon_a = Binv(e_a, 1)
  Mat nakayama;
};

AlgebraData build_algebra(Tensor C, Mat B, Scalar R, std::vector<std::string> labels = {});

// Build from a multiplication table and a Frobenius form:
// Binv_ab = eps(e_a e_b), B = Binv^{-1}, C_abc = eps(e_a e_b e_c).
AlgebraData from_frobenius_form(const Tensor& mult, const Vec& eps, Scalar R,
                                std::vector<std::string> labels = {});

Vec basis_vector(std::size_t d, std::size_t a);

Vec multiply(const AlgebraData& alg, const Vec& a, const Vec& b);
Vec power(const AlgebraData& alg, const Vec& a, unsigned exponent);
Scalar frobenius_form(const AlgebraData& alg, const Vec& a);
Vec nakayama(const AlgebraData& alg, const Vec& a);

// Matrix of x -> a x and x -> x a in coordinates.
Mat left_multiplication(const AlgebraData& alg, const Vec& a);
Mat right_multiplication(const AlgebraData& alg, const Vec& a);

struct ValidationReport {
  bool nondegenerate_B = false;
  bool nondegenerate_C = false;
  bool compatible = false;
  bool associative = false;
  bool special = false;
  bool symmetric = false;
  bool spherical = false;
  bool separable_witness_ok = false;
  double max_residual = 0.0;

  bool frobenius() const {
    return nondegenerate_B && nondegenerate_C && compatible && associative;
  }
};

ValidationReport validate(const AlgebraData& alg, double tol = kDefaultTol);

}  // namespace spinsum
