#pragma once

#include <optional>
#include <vector>

#include "spinsum/algebra.hpp"
#include "spinsum/crossing.hpp"
#include "spinsum/surface.hpp"

namespace spinsum {

// Sum over edge states of R^V * prod_triangles C * prod_interior_edges B, with
// V the number of interior vertices. Boundary edges stay open, one axis each
// in the order of tri.boundary(); with boundary_states given, the tensor is
// evaluated at those states and returned as a scalar.
Tensor naive_partition(const AlgebraData& alg, const Triangulation& tri,
                       const std::optional<std::vector<std::size_t>>& boundary_states = std::nullopt);

enum class Gen { Id, CupB, CapBinv, Mult, Unit, Counit, Cross, CurlR };

struct GenArity {
  std::size_t in, out;
};
GenArity arity(Gen g);

struct Placed {
  Gen gen;
  std::size_t at;  // first input strand of the generator within its slice
};

// Slices are applied bottom to top. Strands not covered by a generator pass
// through unchanged.
struct Diagram {
  std::size_t inputs = 0;
  std::vector<std::vector<Placed>> slices;
};

// The composite map as a tensor with output axes first, then input axes.
// No powers of R are applied. Throws ArityMismatch on malformed slices.
// cr may be null when the diagram has no Cross or CurlR.
Tensor eval_diagram(const AlgebraData& alg, const CrossingMap* cr, const Diagram& diagram);

// Handle element m(id (x) m)(id (x) lambda (x) id)((phi^ka (x) id)B (x) (phi^kb (x) id)B).
Vec handle_element(const AlgebraData& alg, const CrossingMap& cr, int ka, int kb,
                   double tol = kDefaultTol);
Vec eta(const AlgebraData& alg, const CrossingMap& cr, double tol = kDefaultTol);
Vec chi(const AlgebraData& alg, const CrossingMap& cr, double tol = kDefaultTol);

// Cylinder maps: p(a) = m(m (x) id)(lambda (x) id)(a (x) B), n1 the same with
// (phi (x) id)B, n2 = phi n1.
struct RingMaps {
  Mat p, n1, n2;
};
RingMaps ring_maps(const AlgebraData& alg, const CrossingMap& cr, double tol = kDefaultTol);

// R eps(eta^g) for parity +1, R eps(chi eta^{g-1}) for parity -1.
Scalar spin_partition(const AlgebraData& alg, const CrossingMap& cr, int genus, int parity,
                      double tol = kDefaultTol);
// R eps(product of one handle element per handle, curls read off the q-bits).
Scalar spin_partition_direct(const AlgebraData& alg, const CrossingMap& cr, const SpinStructure& s,
                             double tol = kDefaultTol);

// z = e_a e_b e_c e_d B^{ac} B^{bd}
Vec fhk_element(const AlgebraData& alg);
Scalar fhk_partition(const AlgebraData& alg, int genus, double tol = kDefaultTol);

}  // namespace spinsum
