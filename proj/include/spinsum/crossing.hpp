#pragma once

#include "spinsum/algebra.hpp"
#include "spinsum/grading.hpp"

namespace spinsum {

// lambda(k, l, i, j): lambda(e_i (x) e_j) = sum_{k,l} lambda(k,l,i,j) e_k (x) e_l.
// Axis order is (out1, out2, in1, in2).
struct CrossingMap {
  Tensor lambda;

  std::size_t dim() const { return lambda.rank() ? lambda.extent(0) : 0; }
};

CrossingMap canonical_crossing(std::size_t d);

// lambda(a_h (x) b_j) = bichar(h, j) b_j (x) a_h on homogeneous basis vectors.
CrossingMap crossing_from_bicharacter(const Grading& grading, const Bicharacter& bichar);

// Residuals behind each flag, all relative (see relative_residual).
struct AxiomResiduals {
  double compat_B = 0;  // both orientations plus lambda(1 (x) a) = a (x) 1 and its mirror
  double compat_C = 0;  // lambda(m (x) id) = (id (x) m)(lambda (x) id)(id (x) lambda) and mirror
  double rII = 0;
  double rIII = 0;
  double ribbon = 0;    // right curl minus left curl
  double rI = 0;        // right curl minus identity
  double phi_squared = 0;
};

struct AxiomReport {
  bool compat_B = false;
  bool compat_C = false;
  bool rII = false;
  bool rIII = false;
  bool ribbon = false;
  bool rI = false;
  bool phi_squared_id = false;
  double max_residual = 0;  // worst residual among the flags that passed
  AxiomResiduals residuals;

  // Axioms 1-5: a spin state sum model.
  bool spin_model() const { return compat_B && compat_C && rII && rIII && ribbon; }
  bool curl_free() const { return spin_model() && rI; }
};

AxiomReport check_axioms(const AlgebraData& alg, const CrossingMap& cr, double tol = kDefaultTol);

// Right- and left-handed curls as coordinate matrices:
//   right(a) = (id (x) Binv)(lambda (x) id)(a (x) B)
//   left(a)  = (Binv (x) id)(id (x) lambda)(B (x) a)
Mat curl_right(const AlgebraData& alg, const CrossingMap& cr);
Mat curl_left(const AlgebraData& alg, const CrossingMap& cr);

// The curl map phi (right-handed side of the ribbon axiom). Requires
// axioms 1-3; throws AxiomPrereqFailed otherwise.
Mat curl_map(const AlgebraData& alg, const CrossingMap& cr, double tol = kDefaultTol);

struct GradedConditionsReport {
  bool condition1 = false;  // A_h orthogonal to A_j, or bichar(h,l) = bichar(l,j) for all l
  bool condition2 = false;  // sigma^2 = id
  bool inverse_symmetry = false;  // bichar(h,j) = bichar(j,-h) for all h, j
  double residual = 0;
  AxiomReport axioms;       // check_axioms on the induced crossing
  bool consistent() const { return (condition1 && condition2) == axioms.spin_model(); }
};

GradedConditionsReport check_graded_conditions(const AlgebraData& alg, const Grading& grading,
                                               const Bicharacter& bichar, double tol = kDefaultTol);

}  // namespace spinsum
