#pragma once

#include <optional>
#include <vector>

#include "spinsum/algebra.hpp"
#include "spinsum/grading.hpp"

namespace spinsum {

struct Quaternion {
  double t = 0, x = 0, y = 0, z = 0;  // t + x i + y j + z k

  Quaternion conj() const { return {t, -x, -y, -z}; }
  double real() const { return t; }
};

Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator*(double s, const Quaternion& a);
bool operator==(const Quaternion& a, const Quaternion& b);

// Division rings over the reals. C is the complex algebra M_n(C); R, C_R
// and H_R are real algebras of real dimension n^2, 2n^2 and 4n^2.
enum class Ring { C, R, C_R, H_R };

// Number of real basis units per matrix entry: 1, 1, 2, 4. For Ring::C the
// algebra is complex and this is 1.
std::size_t ring_units(Ring ring);

// An n x n matrix over the ring, row-major. Complex entries are encoded as
// t + x i with y = z = 0.
struct RingMatrix {
  std::size_t n = 0;
  std::vector<Quaternion> entries;

  static RingMatrix scalar(std::size_t n, double value);
  static RingMatrix diagonal(const std::vector<double>& values);
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return entries[r * n + c]; }
};

// M_n(ring) with Frobenius form eps(a) = Tr(x a) (Ring::C, Ring::R) or
// Real Tr(x a) (C_R, H_R). Basis: elementary matrices row-major; for real
// rings each e_lm is followed by its unit multiples in the order
// (1), (1,i), (1,i,j,k). When R is omitted it is derived from the special
// condition |D| R Real Tr(x^-1) = 1.
AlgebraData matrix_algebra(Ring ring, const RingMatrix& x, std::optional<Scalar> R = std::nullopt,
                           double tol = kDefaultTol);

// FHK form x = |D| R n * 1.
AlgebraData fhk_matrix_algebra(Ring ring, std::size_t n, Scalar R);

AlgebraData direct_sum(const std::vector<AlgebraData>& parts, double tol = kDefaultTol);

struct GradedAlgebra {
  AlgebraData algebra;
  Grading grading;
  std::vector<Bicharacter> bicharacters;
};

// Group basis e, h, ..., h^{m-1} with eps(f) = R m f(1), graded by C_m.
GradedAlgebra group_algebra_cyclic(std::size_t m, Scalar R);

// New basis f_k = sum_a P(a, k) e_a.
AlgebraData change_basis(const AlgebraData& alg, const Mat& P, std::vector<std::string> labels = {});

// Example algebras with their gradings and bicharacters:
//   z2_matrix(p, q, ring):  M_{p+q}(ring), ring C or R, eps(a) = R(p-q)Tr(ua),
//                           u = diag(+1 x p, -1 x q); blocks are block-diagonal
//                           and block-anti-diagonal; bicharacter (-1)^{hj}.
//   z2_complex(n) / z2_complex(p, q): M_n(C_R) with eps(a) = 2Rn Real Tr(a)
//                           (or 2R(p-q) Real Tr(ua)); blocks M_n(R), i M_n(R).
//   klein_quaternionic(n):  M_n(H_R), eps(a) = 4Rn Real Tr(a), graded by Z2 x Z2
//                           via w in (1,i,j,k); all eight bicharacters.
//   gamma_n(n):             M_n(C) in the basis X^i Y^j (index i + n j), graded
//                           by Z_n x Z_n, bicharacter xi^{i j' - i' j}.
GradedAlgebra z2_matrix(std::size_t p, std::size_t q, Ring ring, Scalar R);
GradedAlgebra z2_complex(std::size_t n, Scalar R);
GradedAlgebra z2_complex(std::size_t p, std::size_t q, Scalar R);
GradedAlgebra klein_quaternionic(std::size_t n, Scalar R);
GradedAlgebra gamma_n(std::size_t n, Scalar R);

// The Klein bicharacter with bichar(i,j) = alpha, bichar(i,k) = beta,
// bichar(j,k) = gamma (elements 1,i,j,k are 0,1,2,3).
Bicharacter klein_bicharacter(int alpha, int beta, int gamma);

}  // namespace spinsum
