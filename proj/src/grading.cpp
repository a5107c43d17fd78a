#include "spinsum/grading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "spinsum/error.hpp"

namespace spinsum {

std::size_t AbelianGroup::order() const {
  std::size_t n = 1;
  for (int f : factors) n *= static_cast<std::size_t>(f);
  return n;
}

std::vector<int> AbelianGroup::digits(std::size_t g) const {
  std::vector<int> out(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    out[i] = static_cast<int>(g % factors[i]);
    g /= factors[i];
  }
  return out;
}

std::size_t AbelianGroup::compose(const std::vector<int>& dig) const {
  std::size_t g = 0;
  for (std::size_t i = factors.size(); i-- > 0;) {
    const int f = factors[i];
    g = g * f + static_cast<std::size_t>(((dig[i] % f) + f) % f);
  }
  return g;
}

std::size_t AbelianGroup::add(std::size_t g, std::size_t h) const {
  auto a = digits(g);
  const auto b = digits(h);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return compose(a);
}

std::size_t AbelianGroup::neg(std::size_t g) const {
  auto a = digits(g);
  for (int& x : a) x = -x;
  return compose(a);
}

double grading_residual(const AlgebraData& alg, const Grading& grading) {
  const std::size_t d = alg.dim;
  if (grading.block_of_basis.size() != d)
    throw Error(ErrorKind::UngradedIndex, "grading does not cover every basis vector");
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t target =
          grading.group.add(grading.block_of_basis[a], grading.block_of_basis[b]);
      for (std::size_t c = 0; c < d; ++c)
        if (grading.block_of_basis[c] != target) worst = std::max(worst, std::abs(alg.mult(a, b, c)));
    }
  return worst / std::max(1.0, alg.mult.max_abs());
}

double bicharacter_residual(const Bicharacter& b) {
  const AbelianGroup& G = b.group;
  const std::size_t n = G.order();
  double worst = 0.0;
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(b(h, j) * b(j, h) - 1.0));
      for (std::size_t l = 0; l < n; ++l)
        worst = std::max(worst, std::abs(b(h, G.add(j, l)) - b(h, j) * b(h, l)));
    }
  return worst;
}

namespace {

Scalar root_of_unity(long k, long n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  // Snap the common cases so tables built from +-1, +-i are exact.
  const long r = ((4 * k) % (4 * n) + 4 * n) % (4 * n);
  if (r % n == 0) {
    switch (r / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, angle);
}

}  // namespace

std::vector<Bicharacter> enumerate_bicharacters(const AbelianGroup& group) {
  const std::size_t r = group.factors.size();
  const std::size_t n = group.order();
  if (n > 64) throw Error(ErrorKind::InvalidArgument, "group order above 64");
  for (int f : group.factors)
    if (f < 1) throw Error(ErrorKind::InvalidArgument, "cyclic factor order must be positive");

  // Exponent choices: generator pair (i, j) takes the value exp(2 pi i k / m).
  // Diagonal values square to one; off-diagonal values are gcd-th roots and
  // fix the transposed entry as their inverse.
  struct Slot {
    std::size_t i, j;
    long modulus;
    std::vector<long> numerators;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < r; ++i) {
    const long ni = group.factors[i];
    Slot s{i, i, 2, {0}};
    if (ni % 2 == 0) s.numerators.push_back(1);
    slots.push_back(s);
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const long g = std::gcd(group.factors[i], group.factors[j]);
      Slot s{i, j, g, {}};
      for (long k = 0; k < g; ++k) s.numerators.push_back(k);
      slots.push_back(s);
    }

  std::vector<Bicharacter> out;
  std::vector<std::size_t> choice(slots.size(), 0);
  while (true) {
    // phase(i, j) as a fraction of a full turn, accumulated over generator pairs.
    std::vector<std::vector<std::pair<long, long>>> gen(r, std::vector<std::pair<long, long>>(r, {0, 1}));
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const long k = slots[s].numerators[choice[s]];
      gen[slots[s].i][slots[s].j] = {k, slots[s].modulus};
      if (slots[s].i != slots[s].j) gen[slots[s].j][slots[s].i] = {-k, slots[s].modulus};
    }
    Bicharacter b{group, Mat(n, n)};
    for (std::size_t h = 0; h < n; ++h) {
      const auto x = group.digits(h);
      for (std::size_t j = 0; j < n; ++j) {
        const auto y = group.digits(j);
        // Sum of x_i y_j k_ij / m_ij over a common denominator.
        long num = 0, den = 1;
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t c = 0; c < r; ++c) {
            const auto [k, m] = gen[a][c];
            const long term = static_cast<long>(x[a]) * y[c] * k;
            const long l = std::lcm(den, m);
            num = num * (l / den) + term * (l / m);
            den = l;
          }
        b.table(h, j) = root_of_unity(num, den);
      }
    }
    out.push_back(std::move(b));

    std::size_t s = 0;
    for (; s < slots.size(); ++s) {
      if (++choice[s] < slots[s].numerators.size()) break;
      choice[s] = 0;
    }
    if (s == slots.size()) break;
  }
  return out;
}

}  // namespace spinsum
