#pragma once

#include <cstddef>
#include <vector>

#include "spinsum/algebra.hpp"

namespace spinsum {

// A finite abelian group given by its cyclic factor orders. Elements are
// flat indices in mixed radix with the first factor least significant, so
// for Z2 x Z2 the elements 0,1,2,3 are (0,0),(1,0),(0,1),(1,1).
struct AbelianGroup {
  std::vector<int> factors;

  std::size_t order() const;
  std::vector<int> digits(std::size_t g) const;
  std::size_t compose(const std::vector<int>& digits) const;
  std::size_t add(std::size_t g, std::size_t h) const;
  std::size_t neg(std::size_t g) const;
};

struct Grading {
  AbelianGroup group;
  std::vector<std::size_t> block_of_basis;
};

// Largest coefficient of e_a e_b outside block g(a)+g(b), relative to the
// largest structure constant.
double grading_residual(const AlgebraData& alg, const Grading& grading);

struct Bicharacter {
  AbelianGroup group;
  Mat table;  // table(h, j) = bichar(h, j)

  Scalar operator()(std::size_t h, std::size_t j) const { return table(h, j); }
};

// Worst violation of bichar(h, j+l) = bichar(h,j) bichar(h,l) and
// bichar(h,j) bichar(j,h) = 1.
double bicharacter_residual(const Bicharacter& b);

// Every bicharacter of the group; tables are built from the values on pairs
// of generators. Deterministic order.
std::vector<Bicharacter> enumerate_bicharacters(const AbelianGroup& group);

}  // namespace spinsum
