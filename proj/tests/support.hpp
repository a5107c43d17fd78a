#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "spinsum/algebra.hpp"
#include "spinsum/constructors.hpp"
#include "spinsum/crossing.hpp"
#include "spinsum/evaluator.hpp"
#include "spinsum/surface.hpp"

namespace spinsum::test {

inline bool near(Scalar a, Scalar b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool near(const Vec& a, const Vec& b, double tol = 1e-9) {
  return relative_residual(a, b) <= tol;
}

inline bool near(const Mat& a, const Mat& b, double tol = 1e-9) {
  return relative_residual(a, b) <= tol;
}

inline Mat random_mat(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> n;
  Mat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Scalar(n(rng), n(rng));
  return m;
}

inline Vec random_vec(std::mt19937_64& rng, Eigen::Index n) { return random_mat(rng, n, 1).col(0); }

}  // namespace spinsum::test
