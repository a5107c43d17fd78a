#include <random>

#include "doctest.h"
#include "spinsum/algebra.hpp"
#include "spinsum/constructors.hpp"
#include "spinsum/error.hpp"
#include "support.hpp"

using namespace spinsum;

TEST_SUITE("algebra") {
  TEST_CASE("M_n(C) multiplication is matrix multiplication") {
    const std::size_t n = 3;
    const AlgebraData alg = fhk_matrix_algebra(Ring::C, n, 0.7);
    std::mt19937_64 rng(11);
    const Vec a = test::random_vec(rng, n * n), b = test::random_vec(rng, n * n);
    // Coordinates are row-major matrix entries.
    const Mat A = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(a.data(), n, n);
    const Mat Bm = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(b.data(), n, n);
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> AB = A * Bm;
    const Vec ab = multiply(alg, a, b);
    CHECK(test::near(ab, Eigen::Map<const Vec>(AB.data(), n * n)));
    // eps(a) = Tr(x a) with x = R n 1
    CHECK(test::near(frobenius_form(alg, a), 0.7 * 3.0 * A.trace()));
  }

  TEST_CASE("FHK algebras validate with every flag set") {
    for (Ring ring : {Ring::C, Ring::R, Ring::C_R, Ring::H_R})
      for (std::size_t n : {1u, 2u}) {
        const AlgebraData alg = fhk_matrix_algebra(ring, n, 0.5);
        const ValidationReport v = validate(alg);
        CHECK(v.frobenius());
        CHECK(v.special);
        CHECK(v.symmetric);
        CHECK(v.spherical);
        CHECK(v.separable_witness_ok);
        CHECK(v.max_residual < 1e-12);
        CHECK(alg.dim == n * n * ring_units(ring));
        CHECK(alg.unital);
      }
  }

  TEST_CASE("the Nakayama automorphism satisfies eps(xy) = eps(sigma(y) x)") {
    const AlgebraData alg = z2_matrix(2, 1, Ring::C, 1.0).algebra;
    std::mt19937_64 rng(12);
    const Vec x = test::random_vec(rng, alg.dim), y = test::random_vec(rng, alg.dim);
    CHECK(test::near(frobenius_form(alg, multiply(alg, x, y)), frobenius_form(alg, multiply(alg, nakayama(alg, y), x))));
    const ValidationReport v = validate(alg);
    CHECK(v.frobenius());
    CHECK_FALSE(v.symmetric);
    CHECK(v.spherical);
  }

  TEST_CASE("from_frobenius_form reproduces the constructor data") {
    const AlgebraData a = fhk_matrix_algebra(Ring::C, 2, 1.0);
    const AlgebraData b = from_frobenius_form(a.mult, a.counit, a.R);
    CHECK(max_abs_diff(a.C, b.C) < 1e-12);
    CHECK(test::near(a.B, b.B, 1e-12));
  }

  TEST_CASE("a singular pairing is rejected") {
    Tensor C({2, 2, 2});
    C(0, 0, 0) = 1.0;
    Mat B = Mat::Zero(2, 2);
    B(0, 0) = 1.0;
    CHECK_THROWS_AS(build_algebra(C, B, 1.0), Error);
    try {
      build_algebra(C, B, 1.0);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularPairing);
    }
  }

  TEST_CASE("a non-special algebra is flagged") {
    // Wrong R for M_2(C): the special condition fails but the rest holds.
    AlgebraData alg = fhk_matrix_algebra(Ring::C, 2, 1.0);
    alg = build_algebra(alg.C, alg.B, 2.0);
    const ValidationReport v = validate(alg);
    CHECK(v.frobenius());
    CHECK_FALSE(v.special);
  }
}

TEST_SUITE("constructors") {
  TEST_CASE("quaternion units multiply as i j = k") {
    const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1}, one{1, 0, 0, 0};
    CHECK(i * j == k);
    CHECK(j * i == -1.0 * k);
    CHECK(i * i == -1.0 * one);
    CHECK(j * k == i);
  }

  TEST_CASE("H_R basis elements compose like quaternion matrix units") {
    // (l*n+m)*4 + w indexes e_lm times unit w in (1, i, j, k).
    const std::size_t n = 2;
    const AlgebraData alg = fhk_matrix_algebra(Ring::H_R, n, 1.0);
    auto idx = [&](std::size_t l, std::size_t m, std::size_t w) { return (l * n + m) * 4 + w; };
    // (e_01 i)(e_10 j) = e_00 k
    const Vec p = multiply(alg, basis_vector(alg.dim, idx(0, 1, 1)), basis_vector(alg.dim, idx(1, 0, 2)));
    CHECK(test::near(p, basis_vector(alg.dim, idx(0, 0, 3))));
    const Vec z = multiply(alg, basis_vector(alg.dim, idx(0, 1, 1)), basis_vector(alg.dim, idx(0, 1, 2)));
    CHECK(z.norm() < 1e-14);
  }

  TEST_CASE("group algebra of C_m multiplies exponents") {
    const GradedAlgebra g = group_algebra_cyclic(5, 1.0);
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b)
        CHECK(test::near(multiply(g.algebra, basis_vector(5, a), basis_vector(5, b)), basis_vector(5, (a + b) % 5)));
    CHECK(validate(g.algebra).frobenius());
    CHECK(validate(g.algebra).special);
  }

  TEST_CASE("matrix_algebra derives R from the special condition") {
    const RingMatrix x = RingMatrix::diagonal({1.0, 2.0, 4.0});
    const AlgebraData alg = matrix_algebra(Ring::C, x);
    // R Tr(x^-1) = 1
    CHECK(test::near(alg.R, 1.0 / (1.0 + 0.5 + 0.25)));
    CHECK(validate(alg).special);
  }

  TEST_CASE("a singular x is rejected") {
    CHECK_THROWS_AS(matrix_algebra(Ring::C, RingMatrix::diagonal({1.0, 0.0})), Error);
  }

  TEST_CASE("direct sums stack dimensions and stay Frobenius") {
    const AlgebraData a = fhk_matrix_algebra(Ring::C, 1, 0.5);
    const AlgebraData b = fhk_matrix_algebra(Ring::C, 2, 0.5);
    const AlgebraData s = direct_sum({a, b});
    CHECK(s.dim == 5);
    CHECK(validate(s).frobenius());
    CHECK_THROWS_AS(direct_sum({a, fhk_matrix_algebra(Ring::C, 1, 1.0)}), Error);
  }

  TEST_CASE("example algebras carry consistent gradings") {
    CHECK(grading_residual(z2_matrix(2, 1, Ring::C, 1.0).algebra, z2_matrix(2, 1, Ring::C, 1.0).grading) < 1e-12);
    const GradedAlgebra k = klein_quaternionic(2, 1.0);
    CHECK(grading_residual(k.algebra, k.grading) < 1e-12);
    CHECK(k.bicharacters.size() == 8);
    const GradedAlgebra c = z2_complex(2, 1.0);
    CHECK(grading_residual(c.algebra, c.grading) < 1e-12);
    const GradedAlgebra g = gamma_n(3, 1.0);
    CHECK(grading_residual(g.algebra, g.grading) < 1e-12);
    CHECK(validate(g.algebra).symmetric);
  }
}
