#include <random>

#include "doctest.h"
#include "spinsum/closed_forms.hpp"
#include "spinsum/error.hpp"
#include "spinsum/evaluator.hpp"
#include "support.hpp"

using namespace spinsum;

namespace {

Mat as_map(const Tensor& t, std::size_t d) { return t.to_matrix(d, t.size() / d); }

}  // namespace

TEST_SUITE("evaluator") {
  TEST_CASE("snake identity") {
    const AlgebraData alg = z2_matrix(2, 1, Ring::C, 1.0).algebra;
    // (CapBinv (x) id)(id (x) CupB) on one strand
    Diagram snake{1, {{{Gen::Id, 0}, {Gen::CupB, 1}}, {{Gen::CapBinv, 0}, {Gen::Id, 2}}}};
    const Tensor t = eval_diagram(alg, nullptr, snake);
    CHECK(test::near(as_map(t, alg.dim), Mat::Identity(alg.dim, alg.dim)));
  }

  TEST_CASE("unit then counit gives eps(1)") {
    const AlgebraData alg = fhk_matrix_algebra(Ring::C, 2, 0.5);
    const Tensor t = eval_diagram(alg, nullptr, Diagram{0, {{{Gen::Unit, 0}}, {{Gen::Counit, 0}}}});
    REQUIRE(t.size() == 1);
    CHECK(test::near(t[0], frobenius_form(alg, alg.unit)));
  }

  TEST_CASE("two crossings cancel") {
    const GradedAlgebra k = klein_quaternionic(1, 1.0);
    const CrossingMap cr = crossing_from_bicharacter(k.grading, k.bicharacters[3]);
    const Tensor t = eval_diagram(k.algebra, &cr, Diagram{2, {{{Gen::Cross, 0}}, {{Gen::Cross, 0}}}});
    const std::size_t D = k.algebra.dim * k.algebra.dim;
    CHECK(test::near(t.to_matrix(D, D), Mat::Identity(D, D)));
  }

  TEST_CASE("malformed slices are rejected") {
    const AlgebraData alg = fhk_matrix_algebra(Ring::C, 1, 1.0);
    CHECK_THROWS_AS(eval_diagram(alg, nullptr, Diagram{1, {{{Gen::Mult, 0}}}}), Error);
    CHECK_THROWS_AS(eval_diagram(alg, nullptr, Diagram{2, {{{Gen::Cross, 0}}}}), Error);
  }

  TEST_CASE("FHK handle element is R^-2 n^-2 times the unit") {
    for (std::size_t n : {1u, 2u, 3u}) {
      const double R = 0.5;
      const AlgebraData alg = fhk_matrix_algebra(Ring::C, n, R);
      const Vec z = fhk_element(alg);
      CHECK(test::near(z, alg.unit / (R * R * n * n)));
      const CrossingMap cr = canonical_crossing(alg.dim);
      CHECK(test::near(eta(alg, cr), z));
      CHECK(test::near(chi(alg, cr), z));
    }
  }

  TEST_CASE("R p is the projection onto the center for M_n(C)") {
    const std::size_t n = 2;
    const double R = 0.5;
    const AlgebraData alg = fhk_matrix_algebra(Ring::C, n, R);
    const RingMaps maps = ring_maps(alg, canonical_crossing(alg.dim));
    std::mt19937_64 rng(21);
    const Vec a = test::random_vec(rng, alg.dim);
    // Oracle: sum_lm e_lm a e_ml = Tr(a) 1, and B = (1 / R n) sum e_lm (x) e_ml.
    Scalar tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += a(i * n + i);
    CHECK(test::near(Vec(R * maps.p * a), Vec(tr / double(n) * alg.unit)));
  }

  TEST_CASE("spin partition agrees with the handle-by-handle evaluation") {
    const GradedAlgebra c = z2_complex(1, 0.5);
    const CrossingMap cr = crossing_from_bicharacter(c.grading, c.bicharacters[0]);
    for (int g = 1; g <= 3; ++g)
      for (const auto& s : all_spin_structures(g))
        CHECK(test::near(spin_partition(c.algebra, cr, g, parity(s)), spin_partition_direct(c.algebra, cr, s)));
  }

  TEST_CASE("closed forms on the sign crossing of M_n(C_R)") {
    const GradedAlgebra c = z2_complex(2, 0.5);
    const CrossingMap cr = crossing_from_bicharacter(c.grading, c.bicharacters[0]);
    for (int g = 0; g <= 3; ++g)
      for (int p : {1, -1}) {
        if (g == 0 && p == -1) continue;
        CHECK(test::near(spin_partition(c.algebra, cr, g, p), z2_complex_closed_form(2, 0.5, g, p)));
      }
  }

  TEST_CASE("the sphere has no odd spin structure") {
    const AlgebraData alg = fhk_matrix_algebra(Ring::C, 1, 1.0);
    CHECK_THROWS_AS(spin_partition(alg, canonical_crossing(1), 0, -1), Error);
  }

  TEST_CASE("naive partition on the polygon matches the FHK formula") {
    for (int g = 0; g <= 3; ++g) {
      const AlgebraData alg = fhk_matrix_algebra(Ring::R, 2, 0.5);
      CHECK(test::near(naive_partition(alg, polygon_triangulation(g))[0], fhk_closed_form(Ring::R, 2, 0.5, g)));
      CHECK(test::near(fhk_partition(alg, g), fhk_closed_form(Ring::R, 2, 0.5, g)));
    }
    CHECK_THROWS_AS(fhk_partition(z2_matrix(2, 1, Ring::C, 1.0).algebra, 1), Error);
  }

  TEST_CASE("open triangulations return boundary tensors") {
    const AlgebraData alg = fhk_matrix_algebra(Ring::C, 2, 1.0);
    const Triangulation tri({{0, 1, 2}});
    const Tensor t = naive_partition(alg, tri);
    CHECK(t.rank() == 3);
    CHECK(test::near(naive_partition(alg, tri, std::vector<std::size_t>{0, 1, 2})[0], t(0, 1, 2)));
    CHECK_THROWS_AS(naive_partition(alg, tri, std::vector<std::size_t>{0, 1}), Error);
    CHECK_THROWS_AS(naive_partition(alg, tri, std::vector<std::size_t>{0, 1, 9}), Error);
  }
}
