#include <array>
#include <random>
#include <vector>

#include "doctest.h"
#include "spinsum/error.hpp"
#include "spinsum/kernels.hpp"
#include "spinsum/tensor.hpp"
#include "support.hpp"

using namespace spinsum;
using spinsum::kernels::cplx;

namespace {

std::vector<cplx> random_buffer(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {u(rng), u(rng)};
  return v;
}

Tensor random_tensor(std::mt19937_64& rng, std::vector<std::size_t> shape) {
  Tensor t(shape);
  std::normal_distribution<double> n;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = {n(rng), n(rng)};
  return t;
}

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("tensordot matches an explicit index loop") {
    std::mt19937_64 rng(3);
    const Tensor a = random_tensor(rng, {2, 3, 4});
    const Tensor b = random_tensor(rng, {4, 3, 5});
    const std::array<std::size_t, 2> ax{1, 2}, bx{1, 0};
    const Tensor c = tensordot(a, b, ax, bx);
    REQUIRE(c.rank() == 2);
    CHECK(c.extent(0) == 2);
    CHECK(c.extent(1) == 5);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t m = 0; m < 5; ++m) {
        Scalar acc{};
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < 4; ++k) acc += a(i, j, k) * b(k, j, m);
        CHECK(test::near(c(i, m), acc, 1e-12));
      }
  }

  TEST_CASE("permute moves axes") {
    std::mt19937_64 rng(4);
    const Tensor a = random_tensor(rng, {2, 3, 4});
    const std::array<std::size_t, 3> perm{2, 0, 1};
    const Tensor p = permute(a, perm);
    CHECK(p.extent(0) == 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 4; ++k) CHECK(p(k, i, j) == a(i, j, k));
  }

  TEST_CASE("sparse and dense leg application agree") {
    std::mt19937_64 rng(5);
    const std::size_t d = 3;
    const Tensor op = random_tensor(rng, {d, d, d});  // two legs in, one out
    const Tensor state = random_tensor(rng, {d, d, d, 2});
    const SparseOperator sp = SparseOperator::from_tensor(op, d, 1, 2);
    const Tensor s1 = apply_on_legs(sp, state, 3, 1);
    const Tensor s2 = apply_on_legs_dense(op.to_matrix(d, d * d), d, 1, 2, state, 3, 1);
    CHECK(max_abs_diff(s1, s2) < 1e-12);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t o = 0; o < d; ++o)
        for (std::size_t c = 0; c < 2; ++c) {
          Scalar acc{};
          for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) acc += op(o, x, y) * state(a, x, y, c);
          CHECK(test::near(s1(a, o, c), acc, 1e-12));
        }
  }

  TEST_CASE("shape errors are reported") {
    const Tensor a({2, 2});
    CHECK_THROWS_AS(a.reshaped({3}), Error);
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("scalar cgemm matches Eigen") {
    std::mt19937_64 rng(6);
    const std::size_t m = 5, k = 7, n = 3;
    auto a = random_buffer(rng, m * k), b = random_buffer(rng, k * n);
    std::vector<cplx> c(m * n);
    kernels::scalar::cgemm(a.data(), b.data(), c.data(), m, k, n, false);
    using RM = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const RM ref = Eigen::Map<RM>(a.data(), m, k) * Eigen::Map<RM>(b.data(), k, n);
    for (std::size_t i = 0; i < m * n; ++i) CHECK(std::abs(c[i] - ref.data()[i]) < 1e-12);
  }

  TEST_CASE("SIMD variants agree with the scalar reference") {
    const kernels::KernelTable* simd = kernels::simd_table();
    if (!simd) {
      MESSAGE("no SIMD variant on this machine");
      return;
    }
    const kernels::KernelTable& ref = kernels::scalar_table();
    std::mt19937_64 rng(7);
    for (std::size_t m : {1u, 2u, 3u, 8u, 17u})
      for (std::size_t k : {1u, 4u, 9u})
        for (std::size_t n : {1u, 2u, 5u, 16u, 33u})
          for (bool acc : {false, true}) {
            auto a = random_buffer(rng, m * k), b = random_buffer(rng, k * n), c0 = random_buffer(rng, m * n);
            auto c1 = c0;
            ref.cgemm(a.data(), b.data(), c0.data(), m, k, n, acc);
            simd->cgemm(a.data(), b.data(), c1.data(), m, k, n, acc);
            CHECK(ref.max_abs_diff(m * n, c0.data(), c1.data()) < 1e-12);
          }
    for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 101u}) {
      auto x = random_buffer(rng, n), y0 = random_buffer(rng, n);
      auto y1 = y0;
      ref.caxpy(n, {0.3, -1.2}, x.data(), y0.data());
      simd->caxpy(n, {0.3, -1.2}, x.data(), y1.data());
      CHECK(ref.max_abs_diff(n, y0.data(), y1.data()) < 1e-14);
      CHECK(simd->max_abs_diff(n, x.data(), y0.data()) == doctest::Approx(ref.max_abs_diff(n, x.data(), y0.data())));
    }
  }

  TEST_CASE("the active table is one of the compiled variants") {
    const auto& act = kernels::active();
    const auto* simd = kernels::simd_table();
    CHECK((&act == &kernels::scalar_table() || (simd && &act == simd)));
  }
}
