// Randomized properties over generated algebras and crossings.

#include <random>

#include "doctest.h"
#include "spinsum/evaluator.hpp"
#include "support.hpp"

using namespace spinsum;

namespace {

// Random invertible diagonal-plus-noise x for M_n(C).
RingMatrix random_x(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.5, 2.0), v(-0.2, 0.2);
  RingMatrix x = RingMatrix::scalar(n, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) x.entries[r * n + c] = {r == c ? u(rng) : v(rng), v(rng), 0, 0};
  return x;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("sphere partition function is R Tr(x) for random forms") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 1 + trial % 3;
      const RingMatrix x = random_x(rng, n);
      const AlgebraData alg = matrix_algebra(Ring::C, x);
      Scalar tr = 0;
      for (std::size_t i = 0; i < n; ++i) tr += Scalar(x(i, i).t, x(i, i).x);
      CHECK(test::near(naive_partition(alg, polygon_triangulation(0))[0], alg.R * tr));
    }
  }

  TEST_CASE("partition functions of symmetric algebras survive random Pachner moves") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> radius(0.3, 2.0);
    for (int trial = 0; trial < 6; ++trial) {
      // Random block sizes and R; sharing R keeps the sum special.
      const Scalar R = radius(rng);
      std::vector<AlgebraData> blocks;
      for (int b = 0; b <= trial % 3; ++b) blocks.push_back(fhk_matrix_algebra(b % 2 ? Ring::C : Ring::R, 1 + (rng() % 2), R));
      const AlgebraData alg = direct_sum(blocks);
      REQUIRE(validate(alg).symmetric);
      const int g = trial % 3;
      const Triangulation base = polygon_triangulation(g);
      const Scalar z0 = naive_partition(alg, base)[0];
      for (int k = 1; k <= 10; k += 3)
        CHECK(test::near(naive_partition(alg, random_pachner_moves(base, k, rng()))[0], z0));
    }
  }

  TEST_CASE("handle elements are central and eta^2 = chi^2 for bicharacter crossings") {
    const GradedAlgebra k = klein_quaternionic(1, 0.5);
    for (const auto& b : k.bicharacters) {
      const CrossingMap cr = crossing_from_bicharacter(k.grading, b);
      const Vec e = eta(k.algebra, cr), c = chi(k.algebra, cr);
      for (std::size_t a = 0; a < k.algebra.dim; ++a) {
        const Vec x = basis_vector(k.algebra.dim, a);
        CHECK(test::near(multiply(k.algebra, e, x), multiply(k.algebra, x, e)));
        CHECK(test::near(multiply(k.algebra, c, x), multiply(k.algebra, x, c)));
      }
      CHECK(test::near(multiply(k.algebra, e, e), multiply(k.algebra, c, c)));
    }
  }

  TEST_CASE("adding two curls to a handle changes nothing") {
    const GradedAlgebra c = z2_complex(1, 1.0);
    const CrossingMap cr = crossing_from_bicharacter(c.grading, c.bicharacters[0]);
    for (int ka = 0; ka <= 1; ++ka)
      for (int kb = 0; kb <= 1; ++kb)
        CHECK(test::near(handle_element(c.algebra, cr, ka + 2, kb), handle_element(c.algebra, cr, ka, kb)));
    // The three even torus diagrams agree.
    CHECK(test::near(handle_element(c.algebra, cr, 0, 0), handle_element(c.algebra, cr, 1, 0)));
    CHECK(test::near(handle_element(c.algebra, cr, 0, 0), handle_element(c.algebra, cr, 0, 1)));
  }

  TEST_CASE("random spin structures give the same value as their parity class") {
    std::mt19937_64 rng(33);
    const GradedAlgebra k = klein_quaternionic(1, 1.0);
    const CrossingMap cr = crossing_from_bicharacter(k.grading, k.bicharacters[1]);
    std::bernoulli_distribution bit;
    for (int trial = 0; trial < 20; ++trial) {
      const int g = 1 + trial % 4;
      std::vector<int> q(2 * g);
      for (auto& v : q) v = bit(rng);
      const SpinStructure s = spin_structure(g, q);
      CHECK(test::near(spin_partition_direct(k.algebra, cr, s), spin_partition(k.algebra, cr, g, parity(s))));
    }
  }
}
