#include "spinsum/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "spinsum/error.hpp"

namespace spinsum {

namespace {

void require_finite(const Tensor& t, const char* what) {
  if (!t.all_finite()) throw Error(ErrorKind::NonFinite, what);
}

void require_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, what);
}

void require_dim(const AlgebraData& alg, const Vec& v) {
  if (static_cast<std::size_t>(v.size()) != alg.dim)
    throw Error(ErrorKind::DimensionMismatch, "element length differs from algebra dimension");
}

double smallest_singular_value(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s.size() ? s(s.size() - 1) : 0.0;
}

// Solve sum_a u_a mult(a,b,c) = delta_bc and sum_a u_a mult(b,a,c) = delta_bc.
bool find_unit(const Tensor& mult, std::size_t d, Vec& unit) {
  Mat sys(2 * d * d, d);
  Vec rhs(2 * d * d);
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t r = b * d + c;
      for (std::size_t a = 0; a < d; ++a) {
        sys(r, a) = mult(a, b, c);
        sys(d * d + r, a) = mult(b, a, c);
      }
      rhs(r) = rhs(d * d + r) = (b == c) ? 1.0 : 0.0;
    }
  unit = sys.colPivHouseholderQr().solve(rhs);
  return relative_residual(Vec(sys * unit), rhs) <= 1e-10;
}

}  // namespace

Vec basis_vector(std::size_t d, std::size_t a) {
  Vec v = Vec::Zero(d);
  v(a) = 1.0;
  return v;
}

AlgebraData build_algebra(Tensor C, Mat B, Scalar R, std::vector<std::string> labels) {
  if (C.rank() != 3 || C.extent(0) == 0 || C.extent(1) != C.extent(0) ||
      C.extent(2) != C.extent(0))
    throw Error(ErrorKind::ShapeMismatch, "C must have shape [d,d,d] with d >= 1");
  const std::size_t d = C.extent(0);
  if (static_cast<std::size_t>(B.rows()) != d || static_cast<std::size_t>(B.cols()) != d)
    throw Error(ErrorKind::ShapeMismatch, "B must be d x d");
  require_finite(C, "C has non-finite entries");
  require_finite(B, "B has non-finite entries");
  if (!std::isfinite(R.real()) || !std::isfinite(R.imag()))
    throw Error(ErrorKind::NonFinite, "R is not finite");
  if (R == Scalar{}) throw Error(ErrorKind::InvalidArgument, "R must be nonzero");

  AlgebraData alg;
  alg.dim = d;
  alg.R = R;
  alg.C = std::move(C);
  alg.B = std::move(B);
  if (labels.empty())
    for (std::size_t a = 0; a < d; ++a) labels.push_back("e" + std::to_string(a));
  if (labels.size() != d) throw Error(ErrorKind::LengthMismatch, "one label per basis vector");
  alg.labels = std::move(labels);

  const double scale = std::max(1.0, alg.B.cwiseAbs().maxCoeff());
  if (smallest_singular_value(alg.B) <= kDefaultTol * scale)
    throw Error(ErrorKind::SingularPairing, "B has no inverse");
  alg.Binv = alg.B.partialPivLu().inverse();
  if (relative_residual(Mat(alg.Binv * alg.B), Mat(Mat::Identity(d, d))) > 1e-8)
    throw Error(ErrorKind::SingularPairing, "B is numerically singular");

  // C_ab^c = C_abd B^{dc}
  const std::size_t zero = 0;
  const std::size_t c_axis = 2;
  alg.mult = tensordot(alg.C, Tensor::from_matrix(alg.B), std::span(&c_axis, 1), std::span(&zero, 1));

  alg.beta = Vec::Zero(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (alg.B(a, b) != Scalar{})
        for (std::size_t c = 0; c < d; ++c) alg.beta(c) += alg.B(a, b) * alg.mult(a, b, c);

  alg.unital = find_unit(alg.mult, d, alg.unit);
  if (!alg.unital) alg.unit = R * alg.beta;
  alg.counit = alg.Binv * alg.unit;
  alg.nakayama = alg.B.transpose() * alg.Binv;
  return alg;
}

AlgebraData from_frobenius_form(const Tensor& mult, const Vec& eps, Scalar R,
                                std::vector<std::string> labels) {
  if (mult.rank() != 3) throw Error(ErrorKind::ShapeMismatch, "multiplication table rank");
  const std::size_t d = mult.extent(0);
  if (static_cast<std::size_t>(eps.size()) != d)
    throw Error(ErrorKind::DimensionMismatch, "Frobenius form length");
  Mat Binv(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Scalar s{};
      for (std::size_t c = 0; c < d; ++c) s += mult(a, b, c) * eps(c);
      Binv(a, b) = s;
    }
  if (smallest_singular_value(Binv) <= kDefaultTol * std::max(1.0, Binv.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::SingularPairing, "Frobenius form is degenerate");
  Tensor C({d, d, d});
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t x = 0; x < d; ++x) {
        const Scalar m = mult(a, b, x);
        if (m == Scalar{}) continue;
        for (std::size_t c = 0; c < d; ++c) C(a, b, c) += m * Binv(x, c);
      }
  return build_algebra(std::move(C), Binv.partialPivLu().inverse(), R, std::move(labels));
}

Vec multiply(const AlgebraData& alg, const Vec& a, const Vec& b) {
  require_dim(alg, a);
  require_dim(alg, b);
  const std::size_t d = alg.dim;
  Vec out = Vec::Zero(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (a(i) == Scalar{}) continue;
    for (std::size_t j = 0; j < d; ++j) {
      const Scalar ab = a(i) * b(j);
      if (ab == Scalar{}) continue;
      const Scalar* row = alg.mult.data() + (i * d + j) * d;
      for (std::size_t c = 0; c < d; ++c) out(c) += ab * row[c];
    }
  }
  return out;
}

Vec power(const AlgebraData& alg, const Vec& a, unsigned exponent) {
  Vec out = alg.unit;
  for (unsigned k = 0; k < exponent; ++k) out = multiply(alg, out, a);
  return out;
}

Scalar frobenius_form(const AlgebraData& alg, const Vec& a) {
  require_dim(alg, a);
  return alg.counit.transpose() * a;
}

Vec nakayama(const AlgebraData& alg, const Vec& a) {
  require_dim(alg, a);
  return alg.nakayama * a;
}

Mat left_multiplication(const AlgebraData& alg, const Vec& a) {
  Mat out(alg.dim, alg.dim);
  for (std::size_t b = 0; b < alg.dim; ++b) out.col(b) = multiply(alg, a, basis_vector(alg.dim, b));
  return out;
}

Mat right_multiplication(const AlgebraData& alg, const Vec& a) {
  Mat out(alg.dim, alg.dim);
  for (std::size_t b = 0; b < alg.dim; ++b) out.col(b) = multiply(alg, basis_vector(alg.dim, b), a);
  return out;
}

ValidationReport validate(const AlgebraData& alg, double tol) {
  const std::size_t d = alg.dim;
  ValidationReport rep;
  double worst_passing = 0.0;
  auto record = [&](bool& flag, double residual) {
    flag = residual <= tol;
    if (flag) worst_passing = std::max(worst_passing, residual);
  };

  // Snake identity in both orders, plus a conditioning guard.
  {
    const Mat I = Mat::Identity(d, d);
    double r = std::max(relative_residual(Mat(alg.Binv * alg.B), I),
                        relative_residual(Mat(alg.B * alg.Binv), I));
    if (smallest_singular_value(alg.B) <= tol) r = std::max(r, 1.0);
    record(rep.nondegenerate_B, r);
  }

  // Flatten C to d x d^2; full row rank means C(., ., a) = 0 forces a = 0.
  {
    Mat flat(d, d * d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c) flat(c, a * d + b) = alg.C(a, b, c);
    const double s = smallest_singular_value(flat.transpose());
    const double scale = std::max(1.0, flat.cwiseAbs().maxCoeff());
    record(rep.nondegenerate_C, s > tol * scale ? 0.0 : 1.0);
  }

  // C_abc B^{cd} = B^{de} C_eab, and the cyclic form C_eab Binv_dc B^{de} = C_abc.
  {
    Tensor lhs({d, d, d}), rhs({d, d, d}), cyc({d, d, d});
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t x = 0; x < d; ++x) {
          Scalar l{}, r{};
          for (std::size_t e = 0; e < d; ++e) {
            l += alg.C(a, b, e) * alg.B(e, x);
            r += alg.B(x, e) * alg.C(e, a, b);
          }
          lhs(a, b, x) = l;
          rhs(a, b, x) = r;
        }
    // cyc(a,b,c) = sum_{d,e} C_eab Binv_dc B^{de}
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c) {
          Scalar s{};
          for (std::size_t x = 0; x < d; ++x) s += rhs(a, b, x) * alg.Binv(x, c);
          cyc(a, b, c) = s;
        }
    record(rep.compatible, std::max(relative_residual(lhs, rhs), relative_residual(cyc, alg.C)));
  }

  {
    double r = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      const Vec ea = basis_vector(d, a);
      for (std::size_t b = 0; b < d; ++b) {
        const Vec ab = multiply(alg, ea, basis_vector(d, b));
        for (std::size_t c = 0; c < d; ++c) {
          const Vec ec = basis_vector(d, c);
          r = std::max(r, relative_residual(multiply(alg, ab, ec),
                                            multiply(alg, ea, multiply(alg, basis_vector(d, b), ec))));
        }
      }
    }
    record(rep.associative, r);
  }

  {
    double r = relative_residual(Vec(alg.R * alg.beta), alg.unit);
    if (!alg.unital) r = std::max(r, 1.0);
    record(rep.special, r);
  }

  record(rep.symmetric, relative_residual(alg.B, Mat(alg.B.transpose())));
  record(rep.spherical,
         relative_residual(Mat(alg.nakayama * alg.nakayama), Mat(Mat::Identity(d, d))));

  // Separability witness t = R*B: x |> t = t <| x for every basis x, m(t) = 1.
  {
    const Mat t = alg.R * alg.B;
    double r = relative_residual(Vec(alg.R * alg.beta), alg.unit);
    for (std::size_t x = 0; x < d; ++x) {
      const Vec ex = basis_vector(d, x);
      const Mat left = left_multiplication(alg, ex) * t;
      const Mat right = t * right_multiplication(alg, ex).transpose();
      r = std::max(r, relative_residual(left, right));
    }
    record(rep.separable_witness_ok, r);
  }

  rep.max_residual = worst_passing;
  return rep;
}

}  // namespace spinsum
