#include "spinsum/evaluator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numeric>

#include "legops.hpp"
#include "spinsum/error.hpp"

namespace spinsum {

using detail::LegOp;
using detail::Step;

// ---------------------------------------------------------------- naive sums

namespace {

struct Network {
  const Triangulation& tri;
  std::map<Incidence, std::pair<Incidence, bool>> partner;  // -> (other side, this side is first)

  explicit Network(const Triangulation& t) : tri(t) {
    for (const auto& [e, inc] : t.gluings()) {
      partner[inc.first] = {inc.second, true};
      partner[inc.second] = {inc.first, false};
    }
  }
};

// Replace axis `axis` of t (a leg whose side is `first_side` or not) with the
// partner's state index via the weight B(first, second).
Tensor weight_axis(const Tensor& t, std::size_t axis, const Mat& B, bool this_is_first) {
  // W(x, y) with x the partner's state, y this side's state.
  const Mat W = this_is_first ? Mat(B.transpose()) : B;
  const std::size_t one = 1;
  Tensor out = tensordot(Tensor::from_matrix(W), t, std::span(&one, 1), std::span(&axis, 1));
  // out axes: x, then t's axes without `axis`. Move x back into place.
  std::vector<std::size_t> perm;
  for (std::size_t a = 1; a <= axis; ++a) perm.push_back(a);
  perm.push_back(0);
  for (std::size_t a = axis + 1; a < t.rank(); ++a) perm.push_back(a);
  return permute(out, perm);
}

void close_internal_pairs(const Network& net, const Mat& B, Tensor& T, std::vector<Incidence>& legs) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < legs.size() && !again; ++i) {
      const auto it = net.partner.find(legs[i]);
      if (it == net.partner.end()) continue;
      const auto j_it = std::find(legs.begin(), legs.end(), it->second.first);
      if (j_it == legs.end()) continue;
      const std::size_t j = static_cast<std::size_t>(j_it - legs.begin());
      // trace_pair weights w(state_i, state_j); B is indexed (first, second).
      const Mat w = it->second.second ? B : Mat(B.transpose());
      T = trace_pair(T, i, j, w);
      legs.erase(legs.begin() + std::max(i, j));
      legs.erase(legs.begin() + std::min(i, j));
      again = true;
    }
  }
}

}  // namespace

Tensor naive_partition(const AlgebraData& alg, const Triangulation& tri,
                       const std::optional<std::vector<std::size_t>>& boundary_states) {
  const Network net(tri);
  const std::size_t F = tri.face_count();
  std::vector<bool> used(F, false);

  Tensor T = alg.C;
  std::vector<Incidence> legs = {{0, 0}, {0, 1}, {0, 2}};
  used[0] = true;
  close_internal_pairs(net, alg.B, T, legs);

  for (std::size_t step = 1; step < F; ++step) {
    // Greedy: the unused triangle sharing most edges with the current tensor.
    std::size_t best = F;
    int best_shared = -1;
    for (std::size_t t = 0; t < F; ++t) {
      if (used[t]) continue;
      int shared = 0;
      for (std::size_t s = 0; s < 3; ++s) {
        const auto it = net.partner.find({t, s});
        if (it != net.partner.end() &&
            std::find(legs.begin(), legs.end(), it->second.first) != legs.end())
          ++shared;
      }
      if (shared > best_shared) {
        best_shared = shared;
        best = t;
      }
    }
    used[best] = true;

    Tensor Cn = alg.C;
    std::vector<std::size_t> axes_T, axes_C;
    std::vector<Incidence> new_legs;
    for (std::size_t s = 0; s < 3; ++s) {
      const Incidence here{best, s};
      const auto it = net.partner.find(here);
      if (it != net.partner.end()) {
        const auto pos = std::find(legs.begin(), legs.end(), it->second.first);
        if (pos != legs.end()) {
          Cn = weight_axis(Cn, s, alg.B, it->second.second);
          axes_T.push_back(static_cast<std::size_t>(pos - legs.begin()));
          axes_C.push_back(s);
          continue;
        }
      }
      new_legs.push_back(here);
    }
    T = tensordot(T, Cn, axes_T, axes_C);
    std::vector<Incidence> merged;
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (std::find(axes_T.begin(), axes_T.end(), i) == axes_T.end()) merged.push_back(legs[i]);
    merged.insert(merged.end(), new_legs.begin(), new_legs.end());
    legs = std::move(merged);
    close_internal_pairs(net, alg.B, T, legs);
  }

  // Order the open legs as tri.boundary() lists them.
  std::vector<std::size_t> perm;
  for (const auto& b : tri.boundary()) {
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (tri.edge_at(legs[i].triangle, legs[i].slot) == b.edge) perm.push_back(i);
  }
  if (perm.size() != legs.size()) throw Error(ErrorKind::InvalidCell, "open legs do not match the boundary");
  T = permute(T, perm);
  T *= std::pow(alg.R, static_cast<double>(tri.interior_vertex_count()));

  if (!boundary_states) return T;
  const auto& states = *boundary_states;
  if (states.size() != T.rank())
    throw Error(ErrorKind::LengthMismatch, "one boundary state per boundary edge");
  for (std::size_t s : states)
    if (s >= alg.dim) throw Error(ErrorKind::StateOutOfRange, "boundary state exceeds dimension");
  return Tensor::scalar(T[T.offset(std::span<const std::size_t>(states))]);
}

// ---------------------------------------------------------------- diagrams

GenArity arity(Gen g) {
  switch (g) {
    case Gen::Id: return {1, 1};
    case Gen::CupB: return {0, 2};
    case Gen::CapBinv: return {2, 0};
    case Gen::Mult: return {2, 1};
    case Gen::Unit: return {0, 1};
    case Gen::Counit: return {1, 0};
    case Gen::Cross: return {2, 2};
    case Gen::CurlR: return {1, 1};
  }
  return {0, 0};
}

namespace {

class GeneratorSet {
 public:
  GeneratorSet(const AlgebraData& alg, const CrossingMap* cr) : alg_(alg), cr_(cr) {}

  const LegOp& get(Gen g) {
    const auto idx = static_cast<std::size_t>(g);
    if (!ops_[idx]) ops_[idx] = std::make_unique<LegOp>(build(g));
    return *ops_[idx];
  }

 private:
  LegOp build(Gen g) {
    const std::size_t d = alg_.dim;
    switch (g) {
      case Gen::Id: return detail::matrix_op(Mat::Identity(d, d));
      case Gen::CupB: return detail::cup_op(alg_.B);
      case Gen::CapBinv: return detail::cap_op(alg_.Binv);
      case Gen::Mult: return detail::mult_op(alg_);
      case Gen::Unit: return detail::unit_op(alg_);
      case Gen::Counit: return detail::counit_op(alg_);
      case Gen::Cross:
      case Gen::CurlR:
        if (cr_ == nullptr) throw Error(ErrorKind::InvalidArgument, "diagram uses a crossing but none was given");
        if (cr_->dim() != d) throw Error(ErrorKind::DimensionMismatch, "crossing dimension differs from algebra");
        if (g == Gen::Cross) return detail::crossing_op(cr_->lambda);
        return detail::matrix_op(curl_right(alg_, *cr_));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown generator");
  }

  const AlgebraData& alg_;
  const CrossingMap* cr_;
  std::array<std::unique_ptr<LegOp>, 8> ops_;
};

}  // namespace

Tensor eval_diagram(const AlgebraData& alg, const CrossingMap* cr, const Diagram& diagram) {
  GeneratorSet gens(alg, cr);
  std::vector<Step> steps;
  std::size_t width = diagram.inputs;
  for (std::size_t k = 0; k < diagram.slices.size(); ++k) {
    std::vector<Placed> row = diagram.slices[k];
    std::sort(row.begin(), row.end(), [](const Placed& a, const Placed& b) { return a.at > b.at; });
    std::size_t out_width = width;
    std::size_t limit = width;  // generators to the right start at or after this strand
    for (const Placed& p : row) {
      const GenArity ar = arity(p.gen);
      if (p.at + ar.in > limit)
        throw Error(ErrorKind::ArityMismatch,
                    "slice " + std::to_string(k) + ": generator overlaps or exceeds the strands");
      limit = p.at;
      steps.push_back({&gens.get(p.gen), p.at});
      out_width = out_width - ar.in + ar.out;
    }
    width = out_width;
  }
  const std::size_t n_in = ipow(alg.dim, diagram.inputs);
  Tensor out = detail::run(steps, detail::identity_columns(alg.dim, diagram.inputs, 0, n_in),
                           diagram.inputs);
  std::vector<std::size_t> shape(width + diagram.inputs, alg.dim);
  return out.reshaped(shape);
}

// ---------------------------------------------------------------- elements

namespace {

void require_spin_model(const AlgebraData& alg, const CrossingMap& cr, double tol) {
  const AxiomReport rep = check_axioms(alg, cr, tol);
  if (!rep.spin_model())
    throw Error(ErrorKind::AxiomPrereqFailed, "crossing does not satisfy axioms 1-5");
}

Vec handle_unchecked(const AlgebraData& alg, const CrossingMap& cr, int ka, int kb) {
  Diagram dg;
  dg.slices.push_back({{Gen::CupB, 0}});
  for (int k = 0; k < ka; ++k) dg.slices.push_back({{Gen::CurlR, 0}});
  dg.slices.push_back({{Gen::CupB, 2}});
  for (int k = 0; k < kb; ++k) dg.slices.push_back({{Gen::CurlR, 2}});
  dg.slices.push_back({{Gen::Cross, 1}});
  dg.slices.push_back({{Gen::Mult, 2}});
  dg.slices.push_back({{Gen::Mult, 1}});
  dg.slices.push_back({{Gen::Mult, 0}});
  const Tensor t = eval_diagram(alg, &cr, dg);
  return Eigen::Map<const Vec>(t.data(), static_cast<Eigen::Index>(t.size()));
}

Mat cylinder_map(const AlgebraData& alg, const CrossingMap& cr, bool curl) {
  Diagram dg;
  dg.inputs = 1;
  dg.slices.push_back({{Gen::CupB, 1}});
  if (curl) dg.slices.push_back({{Gen::CurlR, 1}});
  dg.slices.push_back({{Gen::Cross, 0}});
  dg.slices.push_back({{Gen::Mult, 0}});
  dg.slices.push_back({{Gen::Mult, 0}});
  return eval_diagram(alg, &cr, dg).to_matrix(alg.dim, alg.dim);
}

Scalar closed_from_handles(const AlgebraData& alg, const std::vector<Vec>& handles) {
  Vec prod = alg.unit;
  for (const Vec& h : handles) prod = multiply(alg, prod, h);
  return alg.R * frobenius_form(alg, prod);
}

}  // namespace

Vec handle_element(const AlgebraData& alg, const CrossingMap& cr, int ka, int kb, double tol) {
  if (ka < 0 || kb < 0) throw Error(ErrorKind::InvalidArgument, "curl counts must be nonnegative");
  require_spin_model(alg, cr, tol);
  return handle_unchecked(alg, cr, ka, kb);
}

Vec eta(const AlgebraData& alg, const CrossingMap& cr, double tol) {
  return handle_element(alg, cr, 0, 0, tol);
}

Vec chi(const AlgebraData& alg, const CrossingMap& cr, double tol) {
  return handle_element(alg, cr, 1, 1, tol);
}

RingMaps ring_maps(const AlgebraData& alg, const CrossingMap& cr, double tol) {
  require_spin_model(alg, cr, tol);
  RingMaps out;
  out.p = cylinder_map(alg, cr, false);
  out.n1 = cylinder_map(alg, cr, true);
  out.n2 = curl_right(alg, cr) * out.n1;
  return out;
}

Scalar spin_partition(const AlgebraData& alg, const CrossingMap& cr, int genus, int parity,
                      double tol) {
  if (genus < 0) throw Error(ErrorKind::InvalidArgument, "genus must be nonnegative");
  if (parity != 1 && parity != -1) throw Error(ErrorKind::InvalidArgument, "parity must be +1 or -1");
  if (genus == 0 && parity == -1)
    throw Error(ErrorKind::InvalidArgument, "the sphere has only the even spin structure");
  require_spin_model(alg, cr, tol);
  if (genus == 0) return closed_from_handles(alg, {});
  const Vec e = handle_unchecked(alg, cr, 0, 0);
  std::vector<Vec> handles(static_cast<std::size_t>(genus), e);
  if (parity == -1) handles[0] = handle_unchecked(alg, cr, 1, 1);
  return closed_from_handles(alg, handles);
}

Scalar spin_partition_direct(const AlgebraData& alg, const CrossingMap& cr, const SpinStructure& s,
                             double tol) {
  require_spin_model(alg, cr, tol);
  std::vector<Vec> handles;
  for (int i = 0; i < s.genus; ++i) handles.push_back(handle_unchecked(alg, cr, s.q[2 * i], s.q[2 * i + 1]));
  return closed_from_handles(alg, handles);
}

Vec fhk_element(const AlgebraData& alg) {
  // y_c = sum_{b,e} B^{be} e_b e_c e_e, then z = sum_{a,c} B^{ac} e_a y_c.
  const std::size_t d = alg.dim;
  const Tensor& M = alg.mult;
  Mat y = Mat::Zero(d, d);  // column c holds y_c
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t e = 0; e < d; ++e) {
      const Scalar w = alg.B(b, e);
      if (w == Scalar{}) continue;
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t x = 0; x < d; ++x) {
          const Scalar bc = M(b, c, x);
          if (bc == Scalar{}) continue;
          for (std::size_t o = 0; o < d; ++o) y(o, c) += w * bc * M(x, e, o);
        }
    }
  Vec z = Vec::Zero(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t c = 0; c < d; ++c) {
      if (alg.B(a, c) == Scalar{}) continue;
      z += alg.B(a, c) * multiply(alg, basis_vector(d, a), y.col(c));
    }
  return z;
}

Scalar fhk_partition(const AlgebraData& alg, int genus, double tol) {
  if (genus < 0) throw Error(ErrorKind::InvalidArgument, "genus must be nonnegative");
  if (relative_residual(alg.B, Mat(alg.B.transpose())) > tol)
    throw Error(ErrorKind::NotSymmetric, "the FHK formula needs a symmetric Frobenius form");
  return alg.R * frobenius_form(alg, power(alg, fhk_element(alg), static_cast<unsigned>(genus)));
}

}  // namespace spinsum
