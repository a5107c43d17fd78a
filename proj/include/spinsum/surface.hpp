#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace spinsum {

// A triangle side: which triangle, which slot (0..2).
struct Incidence {
  std::size_t triangle;
  std::size_t slot;
  auto operator<=>(const Incidence&) const = default;
};

// Oriented triangles given by edge ids. With orient = +1 the edges are listed
// in the triangle's cyclic order and slot i runs from corner i to corner i+1;
// orient = -1 lists them in reverse. An edge id used twice is an interior edge
// and the two sides traverse it in opposite directions; an id used once lies on
// the boundary.
class Triangulation {
 public:
  struct BoundaryEdge {
    int edge;
    int direction;  // +1 when traversed along the boundary orientation
  };

  Triangulation() = default;
  Triangulation(std::vector<std::array<int, 3>> triangles, std::vector<int> orient = {});

  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<int>& orient() const { return orient_; }

  // Edge id at a slot in cyclic (orient-corrected) order.
  int edge_at(std::size_t triangle, std::size_t slot) const;

  // interior edge -> its two incidences (ordered by triangle, then slot)
  const std::map<int, std::pair<Incidence, Incidence>>& gluings() const { return gluings_; }
  const std::vector<BoundaryEdge>& boundary() const { return boundary_; }

  std::size_t face_count() const { return triangles_.size(); }
  std::size_t edge_count() const { return gluings_.size() + boundary_.size(); }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t interior_vertex_count() const { return interior_vertex_count_; }
  long euler() const {
    return static_cast<long>(vertex_count()) - static_cast<long>(edge_count()) +
           static_cast<long>(face_count());
  }
  int max_edge_id() const;

  // Corner -> vertex id after all gluings.
  std::size_t vertex_of(std::size_t triangle, std::size_t corner) const {
    return corner_vertex_[triangle * 3 + corner];
  }

 private:
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> orient_;
  std::map<int, std::pair<Incidence, Incidence>> gluings_;
  std::vector<BoundaryEdge> boundary_;
  std::vector<std::size_t> corner_vertex_;
  std::size_t vertex_count_ = 0;
  std::size_t interior_vertex_count_ = 0;
};

// 4g-gon with sides x_{4k} ~ x_{4k+2}, x_{4k+1} ~ x_{4k+3} fanned from one
// corner into 4g-2 triangles (one vertex). g = 0 gives the sphere from a square
// with x_0 ~ x_3, x_1 ~ x_2.
Triangulation polygon_triangulation(int genus);

// Torus from two triangles sharing all three edges.
Triangulation two_triangle_torus();

// Flip the diagonal of the quadrilateral formed by the two triangles on an
// interior edge. Throws BoundaryEdge or InvalidCell.
Triangulation pachner_22(const Triangulation& tri, int interior_edge);

// Replace a triangle by three around a new interior vertex.
Triangulation pachner_13(const Triangulation& tri, std::size_t triangle);

// `count` random 2-2 / 1-3 moves, deterministic in `seed`.
Triangulation random_pachner_moves(Triangulation tri, int count, std::uint64_t seed);

enum class HandleKind { Even, Odd };

// Quadratic form values q(a_1), q(b_1), ..., q(a_g), q(b_g) on a symplectic basis.
struct SpinStructure {
  int genus = 0;
  std::vector<int> q;
};

SpinStructure spin_structure(int genus, std::vector<int> qbits);
int arf(const SpinStructure& s);
int parity(const SpinStructure& s);  // (-1)^Arf
std::vector<HandleKind> handle_word(const SpinStructure& s);

// All 4^g spin structures in lexicographic order of q.
std::vector<SpinStructure> all_spin_structures(int genus);

}  // namespace spinsum
