#include "spinsum/surface.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "spinsum/error.hpp"

namespace spinsum {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Triangulation::Triangulation(std::vector<std::array<int, 3>> triangles, std::vector<int> orient)
    : triangles_(std::move(triangles)), orient_(std::move(orient)) {
  if (triangles_.empty()) throw Error(ErrorKind::InvalidCell, "triangulation has no triangles");
  if (orient_.empty()) orient_.assign(triangles_.size(), 1);
  if (orient_.size() != triangles_.size())
    throw Error(ErrorKind::LengthMismatch, "one orientation sign per triangle");
  for (int o : orient_)
    if (o != 1 && o != -1) throw Error(ErrorKind::InvalidCell, "orientation must be +1 or -1");

  std::map<int, std::vector<Incidence>> uses;
  for (std::size_t t = 0; t < triangles_.size(); ++t)
    for (std::size_t s = 0; s < 3; ++s) {
      const int e = edge_at(t, s);
      if (e < 0) throw Error(ErrorKind::InvalidCell, "edge ids must be nonnegative");
      uses[e].push_back({t, s});
    }

  const std::size_t corners = 3 * triangles_.size();
  UnionFind uf(corners);
  std::set<std::size_t> boundary_corners;
  for (const auto& [e, inc] : uses) {
    if (inc.size() == 1) {
      boundary_.push_back({e, 1});
      boundary_corners.insert(inc[0].triangle * 3 + inc[0].slot);
      boundary_corners.insert(inc[0].triangle * 3 + (inc[0].slot + 1) % 3);
    } else if (inc.size() == 2) {
      gluings_[e] = {inc[0], inc[1]};
      // Opposite traversal: start of one side meets the end of the other.
      const auto [t1, s1] = inc[0];
      const auto [t2, s2] = inc[1];
      uf.unite(t1 * 3 + s1, t2 * 3 + (s2 + 1) % 3);
      uf.unite(t1 * 3 + (s1 + 1) % 3, t2 * 3 + s2);
    } else {
      throw Error(ErrorKind::InvalidCell, "edge " + std::to_string(e) + " is used more than twice");
    }
  }

  corner_vertex_.resize(corners);
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t c = 0; c < corners; ++c) {
    const auto root = uf.find(c);
    const auto it = ids.emplace(root, ids.size()).first;
    corner_vertex_[c] = it->second;
  }
  vertex_count_ = ids.size();
  std::set<std::size_t> on_boundary;
  for (std::size_t c : boundary_corners) on_boundary.insert(corner_vertex_[c]);
  interior_vertex_count_ = vertex_count_ - on_boundary.size();
}

int Triangulation::edge_at(std::size_t triangle, std::size_t slot) const {
  const auto& t = triangles_.at(triangle);
  return orient_[triangle] > 0 ? t[slot] : t[2 - slot];
}

int Triangulation::max_edge_id() const {
  int m = -1;
  for (const auto& t : triangles_) m = std::max({m, t[0], t[1], t[2]});
  return m;
}

Triangulation polygon_triangulation(int genus) {
  if (genus < 0) throw Error(ErrorKind::InvalidArgument, "genus must be nonnegative");
  if (genus == 0) {
    // Square v0 v1 v2 v3 with sides x0 ~ x3 and x1 ~ x2 and diagonal d = 2.
    return Triangulation({{0, 1, 2}, {2, 1, 0}});
  }
  const int sides = 4 * genus;
  auto side_id = [](int j) { return 2 * (j / 4) + (j % 2); };
  // Diagonal v0 -> v_i for 2 <= i <= 4g-2.
  int next = 2 * genus;
  std::vector<int> diag(sides + 1, -1);
  diag[1] = side_id(0);
  for (int i = 2; i <= sides - 2; ++i) diag[i] = next++;
  diag[sides - 1] = side_id(sides - 1);
  std::vector<std::array<int, 3>> tris;
  for (int i = 1; i <= sides - 2; ++i) tris.push_back({diag[i], side_id(i), diag[i + 1]});
  return Triangulation(std::move(tris));
}

Triangulation two_triangle_torus() { return Triangulation({{0, 1, 2}, {0, 1, 2}}); }

namespace {

// Cyclic edge list of a triangle rotated so `slot` comes first.
std::array<int, 3> rotated(const Triangulation& tri, std::size_t t, std::size_t slot) {
  return {tri.edge_at(t, slot), tri.edge_at(t, (slot + 1) % 3), tri.edge_at(t, (slot + 2) % 3)};
}

std::vector<std::array<int, 3>> normalized(const Triangulation& tri) {
  std::vector<std::array<int, 3>> out;
  for (std::size_t t = 0; t < tri.face_count(); ++t) out.push_back(rotated(tri, t, 0));
  return out;
}

}  // namespace

Triangulation pachner_22(const Triangulation& tri, int interior_edge) {
  const auto it = tri.gluings().find(interior_edge);
  if (it == tri.gluings().end()) {
    for (const auto& b : tri.boundary())
      if (b.edge == interior_edge) throw Error(ErrorKind::BoundaryEdge, "2-2 move on a boundary edge");
    throw Error(ErrorKind::InvalidCell, "no such edge");
  }
  const auto [i1, i2] = it->second;
  if (i1.triangle == i2.triangle)
    throw Error(ErrorKind::InvalidCell, "edge is glued to its own triangle");
  const auto [e, x1, x2] = rotated(tri, i1.triangle, i1.slot);
  const auto [e2, y1, y2] = rotated(tri, i2.triangle, i2.slot);
  const int f = tri.max_edge_id() + 1;
  auto tris = normalized(tri);
  tris[i1.triangle] = {y1, f, x2};
  tris[i2.triangle] = {y2, x1, f};
  return Triangulation(std::move(tris));
}

Triangulation pachner_13(const Triangulation& tri, std::size_t triangle) {
  if (triangle >= tri.face_count()) throw Error(ErrorKind::InvalidCell, "no such triangle");
  const auto [a, b, c] = rotated(tri, triangle, 0);
  const int p = tri.max_edge_id() + 1, q = p + 1, x = p + 2;
  auto tris = normalized(tri);
  tris[triangle] = {a, q, p};
  tris.push_back({b, x, q});
  tris.push_back({c, p, x});
  return Triangulation(std::move(tris));
}

Triangulation random_pachner_moves(Triangulation tri, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    std::vector<int> flippable;
    for (const auto& [e, inc] : tri.gluings())
      if (inc.first.triangle != inc.second.triangle) flippable.push_back(e);
    const bool flip = !flippable.empty() && (rng() % 2 == 0);
    if (flip) {
      tri = pachner_22(tri, flippable[rng() % flippable.size()]);
    } else {
      tri = pachner_13(tri, rng() % tri.face_count());
    }
  }
  return tri;
}

SpinStructure spin_structure(int genus, std::vector<int> qbits) {
  if (genus < 0) throw Error(ErrorKind::InvalidArgument, "genus must be nonnegative");
  if (qbits.size() != 2 * static_cast<std::size_t>(genus))
    throw Error(ErrorKind::LengthMismatch, "a spin structure needs 2g quadratic form values");
  for (int& b : qbits) {
    if (b != 0 && b != 1) throw Error(ErrorKind::InvalidArgument, "quadratic form values are bits");
  }
  return {genus, std::move(qbits)};
}

int arf(const SpinStructure& s) {
  int sum = 0;
  for (int i = 0; i < s.genus; ++i) sum += s.q[2 * i] * s.q[2 * i + 1];
  return sum % 2;
}

int parity(const SpinStructure& s) { return arf(s) == 0 ? 1 : -1; }

std::vector<HandleKind> handle_word(const SpinStructure& s) {
  std::vector<HandleKind> out;
  for (int i = 0; i < s.genus; ++i)
    out.push_back(s.q[2 * i] * s.q[2 * i + 1] == 1 ? HandleKind::Odd : HandleKind::Even);
  return out;
}

std::vector<SpinStructure> all_spin_structures(int genus) {
  std::vector<SpinStructure> out;
  const std::size_t n = 2 * static_cast<std::size_t>(genus);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> q(n);
    for (std::size_t k = 0; k < n; ++k) q[k] = (mask >> (n - 1 - k)) & 1;
    out.push_back(spin_structure(genus, std::move(q)));
  }
  return out;
}

}  // namespace spinsum
