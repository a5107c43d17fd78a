#include "spinsum/crossing.hpp"

#include <algorithm>
#include <cmath>

#include "legops.hpp"
#include "spinsum/error.hpp"

namespace spinsum {

using detail::LegOp;
using detail::Step;

CrossingMap canonical_crossing(std::size_t d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  Tensor t({d, d, d, d});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t(j, i, i, j) = 1.0;
  return {std::move(t)};
}

CrossingMap crossing_from_bicharacter(const Grading& grading, const Bicharacter& bichar) {
  const std::size_t d = grading.block_of_basis.size();
  const std::size_t n = grading.group.order();
  if (d == 0) throw Error(ErrorKind::UngradedIndex, "grading covers no basis vectors");
  if (static_cast<std::size_t>(bichar.table.rows()) != n ||
      static_cast<std::size_t>(bichar.table.cols()) != n)
    throw Error(ErrorKind::ShapeMismatch, "bicharacter table does not match the group");
  for (std::size_t g : grading.block_of_basis)
    if (g >= n) throw Error(ErrorKind::UngradedIndex, "basis vector mapped outside the group");
  Tensor t({d, d, d, d});
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      t(b, a, a, b) = bichar(grading.block_of_basis[a], grading.block_of_basis[b]);
  return {std::move(t)};
}

namespace {

void require_match(const AlgebraData& alg, const CrossingMap& cr) {
  if (cr.lambda.rank() != 4 || cr.dim() != alg.dim)
    throw Error(ErrorKind::DimensionMismatch, "crossing dimension differs from algebra");
  for (std::size_t a = 1; a < 4; ++a)
    if (cr.lambda.extent(a) != alg.dim) throw Error(ErrorKind::ShapeMismatch, "crossing tensor shape");
  if (!cr.lambda.all_finite()) throw Error(ErrorKind::NonFinite, "crossing has non-finite entries");
}

// The generators the axiom patterns are written in.
struct Ops {
  LegOp lam, mult, cup, cap, unit, ident;
  Ops(const AlgebraData& alg, const CrossingMap& cr)
      : lam(detail::crossing_op(cr.lambda)),
        mult(detail::mult_op(alg)),
        cup(detail::cup_op(alg.B)),
        cap(detail::cap_op(alg.Binv)),
        unit(detail::unit_op(alg)),
        ident(detail::matrix_op(Mat::Identity(alg.dim, alg.dim))) {}
};

Mat curl_right_with(const Ops& o, std::size_t d) {
  return detail::program_matrix(d, 1, {{&o.cup, 1}, {&o.lam, 0}, {&o.cap, 1}});
}

Mat curl_left_with(const Ops& o, std::size_t d) {
  return detail::program_matrix(d, 1, {{&o.cup, 0}, {&o.lam, 1}, {&o.cap, 0}});
}

double compat_B_residual(const Ops& o, std::size_t d) {
  using detail::program_residual;
  // (Binv (x) id)(id (x) lambda) = (id (x) Binv)(lambda (x) id) on A^3 -> A
  double r = program_residual(d, 3, {{&o.lam, 1}, {&o.cap, 0}}, {{&o.lam, 0}, {&o.cap, 1}});
  // Rotated: (lambda (x) id)(a (x) B) = (id (x) lambda)(B (x) a) on A -> A^3
  r = std::max(r, program_residual(d, 1, {{&o.cup, 1}, {&o.lam, 0}}, {{&o.cup, 0}, {&o.lam, 1}}));
  // The unit passes through the crossing: lambda(1 (x) a) = a (x) 1, lambda(a (x) 1) = 1 (x) a.
  r = std::max(r, program_residual(d, 1, {{&o.unit, 0}, {&o.lam, 0}}, {{&o.unit, 1}}));
  r = std::max(r, program_residual(d, 1, {{&o.unit, 1}, {&o.lam, 0}}, {{&o.unit, 0}}));
  return r;
}

double compat_C_residual(const Ops& o, std::size_t d) {
  using detail::program_residual;
  // lambda(m (x) id) = (id (x) m)(lambda (x) id)(id (x) lambda)
  double r = program_residual(d, 3, {{&o.mult, 0}, {&o.lam, 0}},
                              {{&o.lam, 1}, {&o.lam, 0}, {&o.mult, 1}});
  // lambda(id (x) m) = (m (x) id)(id (x) lambda)(lambda (x) id)
  r = std::max(r, program_residual(d, 3, {{&o.mult, 1}, {&o.lam, 0}},
                                   {{&o.lam, 0}, {&o.lam, 1}, {&o.mult, 0}}));
  return r;
}

}  // namespace

Mat curl_right(const AlgebraData& alg, const CrossingMap& cr) {
  require_match(alg, cr);
  return curl_right_with(Ops(alg, cr), alg.dim);
}

Mat curl_left(const AlgebraData& alg, const CrossingMap& cr) {
  require_match(alg, cr);
  return curl_left_with(Ops(alg, cr), alg.dim);
}

AxiomReport check_axioms(const AlgebraData& alg, const CrossingMap& cr, double tol) {
  require_match(alg, cr);
  const std::size_t d = alg.dim;
  const Ops o(alg, cr);
  AxiomReport rep;
  AxiomResiduals& r = rep.residuals;

  r.compat_B = compat_B_residual(o, d);
  r.compat_C = compat_C_residual(o, d);
  r.rII = detail::program_residual(d, 2, {{&o.lam, 0}, {&o.lam, 0}}, {});
  r.rIII = detail::program_residual(d, 3, {{&o.lam, 0}, {&o.lam, 1}, {&o.lam, 0}},
                                    {{&o.lam, 1}, {&o.lam, 0}, {&o.lam, 1}});
  const Mat right = curl_right_with(o, d);
  const Mat left = curl_left_with(o, d);
  const Mat I = Mat::Identity(d, d);
  r.ribbon = relative_residual(right, left);
  r.rI = relative_residual(right, I);
  r.phi_squared = relative_residual(Mat(right * right), I);

  double worst = 0.0;
  auto flag = [&](bool& f, double residual) {
    f = residual <= tol;
    if (f) worst = std::max(worst, residual);
  };
  flag(rep.compat_B, r.compat_B);
  flag(rep.compat_C, r.compat_C);
  flag(rep.rII, r.rII);
  flag(rep.rIII, r.rIII);
  flag(rep.ribbon, r.ribbon);
  flag(rep.rI, r.rI);
  flag(rep.phi_squared_id, r.phi_squared);
  rep.max_residual = worst;
  return rep;
}

Mat curl_map(const AlgebraData& alg, const CrossingMap& cr, double tol) {
  require_match(alg, cr);
  const std::size_t d = alg.dim;
  const Ops o(alg, cr);
  const double prereq = std::max(
      {compat_B_residual(o, d), compat_C_residual(o, d),
       detail::program_residual(d, 2, {{&o.lam, 0}, {&o.lam, 0}}, {})});
  if (prereq > tol)
    throw Error(ErrorKind::AxiomPrereqFailed,
                "curl map needs compatibility with B and C and the second Reidemeister move");
  return curl_right_with(o, d);
}

GradedConditionsReport check_graded_conditions(const AlgebraData& alg, const Grading& grading,
                                               const Bicharacter& bichar, double tol) {
  const std::size_t d = alg.dim;
  const std::size_t n = grading.group.order();
  if (grading.block_of_basis.size() != d)
    throw Error(ErrorKind::UngradedIndex, "grading does not cover every basis vector");
  GradedConditionsReport rep;

  // Which pairs of blocks pair nontrivially under Binv.
  std::vector<std::vector<bool>> pairs(n, std::vector<bool>(n, false));
  const double scale = std::max(1.0, alg.Binv.cwiseAbs().maxCoeff());
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (std::abs(alg.Binv(a, b)) > tol * scale)
        pairs[grading.block_of_basis[a]][grading.block_of_basis[b]] = true;

  double c1 = 0.0, inv = 0.0;
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j) {
      inv = std::max(inv, std::abs(bichar(h, j) - bichar(j, grading.group.neg(h))));
      if (!pairs[h][j]) continue;
      for (std::size_t l = 0; l < n; ++l) c1 = std::max(c1, std::abs(bichar(h, l) - bichar(l, j)));
    }
  const double c2 =
      relative_residual(Mat(alg.nakayama * alg.nakayama), Mat(Mat::Identity(d, d)));
  rep.condition1 = c1 <= tol;
  rep.condition2 = c2 <= tol;
  rep.inverse_symmetry = inv <= tol;
  rep.residual = std::max(c1, c2);
  rep.axioms = check_axioms(alg, crossing_from_bicharacter(grading, bichar), tol);
  return rep;
}

}  // namespace spinsum
