#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinsum/algebra.hpp"
#include "spinsum/crossing.hpp"
#include "spinsum/grading.hpp"

namespace spinsum {

struct SolveOptions {
  double tol = kDefaultTol;
  int max_solutions = 256;
  int starts = 0;  // multi-start budget; 0 scales it with the free unknowns
  double dedup_radius = 1e-6;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: SPIN_TQFT_THREADS or hardware concurrency
  // Real: crossings with real entries in the algebra's own basis. Auto picks
  // Real when the structure constants, pairing and R are real.
  enum class Field { Auto, Real, Complex };
  Field field = Field::Auto;
};

struct SolveResult {
  std::vector<CrossingMap> solutions;  // in the algebra's own basis, deterministic order
  std::vector<double> residuals;       // worst axiom residual per solution
  std::vector<int> hits;               // converged starts that landed on each solution
  int starts_used = 0;
  int converged = 0;                   // starts that reached a root
  bool complete = true;                // false when max_solutions cut the search short
  std::uint64_t seed = 0;
  bool real = true;                    // field actually solved over
};

// All crossings on a small commutative semisimple algebra, found by damped
// Gauss-Newton from random starts in the idempotent basis after eliminating
// the linear axioms. Every returned crossing passes check_axioms at opts.tol.
SolveResult solve_crossings(const AlgebraData& alg, const SolveOptions& opts = {});

// Primitive idempotents of a commutative semisimple algebra, as columns.
Mat primitive_idempotents(const AlgebraData& alg);

enum class Family { EtaEqualsChi, EtaEqualsMinusChi, Mixed, Unclassified };
std::string to_string(Family f);

struct Classification {
  Vec eta, chi;
  Family family = Family::Unclassified;
  // Z = R^{2-2g} sum_k w_k s_k^[odd] c_k^g written as a formula tag such as
  // "P(s)2^{2-g}R^{2-2g}" or "(1+P(s)2^{1-g})R^{2-2g}". Empty when unclassified.
  std::string tag;
  // Per primitive idempotent u_k: eta = sum c_k R^-2 u_k, chi = sum s_k c_k R^-2 u_k.
  std::vector<double> weights;
  std::vector<int> signs;
  std::vector<double> form_weights;  // w_k = eps(u_k) / R
};

Classification classify_solution(const AlgebraData& alg, const CrossingMap& cr,
                                 double tol = kDefaultTol);

}  // namespace spinsum
