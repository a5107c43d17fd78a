#include "spinsum/constructors.hpp"

#include <cmath>
#include <numbers>

#include "spinsum/error.hpp"

namespace spinsum {

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
          a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
          a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
          a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t};
}

Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
}

Quaternion operator*(double s, const Quaternion& a) { return {s * a.t, s * a.x, s * a.y, s * a.z}; }

bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.t == b.t && a.x == b.x && a.y == b.y && a.z == b.z;
}

std::size_t ring_units(Ring ring) {
  switch (ring) {
    case Ring::C:
    case Ring::R: return 1;
    case Ring::C_R: return 2;
    case Ring::H_R: return 4;
  }
  return 1;
}

RingMatrix RingMatrix::scalar(std::size_t n, double value) {
  return diagonal(std::vector<double>(n, value));
}

RingMatrix RingMatrix::diagonal(const std::vector<double>& values) {
  RingMatrix m{values.size(), std::vector<Quaternion>(values.size() * values.size())};
  for (std::size_t k = 0; k < values.size(); ++k) m.entries[k * m.n + k] = {values[k], 0, 0, 0};
  return m;
}

namespace {

const Quaternion kUnits[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
const char* const kUnitNames[4] = {"", "i", "j", "k"};

// Complex 2n x 2n image of a quaternion matrix: q = a + b j maps to
// [[a, b], [-conj(b), conj(a)]] with a = t + x i, b = y + z i.
Mat complex_image(const RingMatrix& x) {
  const std::size_t n = x.n;
  Mat out = Mat::Zero(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Quaternion& q = x(r, c);
      const Scalar a{q.t, q.x}, b{q.y, q.z};
      out(r, c) = a;
      out(r, n + c) = b;
      out(n + r, c) = -std::conj(b);
      out(n + r, n + c) = std::conj(a);
    }
  return out;
}

Mat complex_matrix(const RingMatrix& x) {
  Mat out(x.n, x.n);
  for (std::size_t r = 0; r < x.n; ++r)
    for (std::size_t c = 0; c < x.n; ++c) out(r, c) = Scalar{x(r, c).t, x(r, c).x};
  return out;
}

void check_entries(Ring ring, const RingMatrix& x) {
  if (x.n == 0 || x.entries.size() != x.n * x.n)
    throw Error(ErrorKind::ShapeMismatch, "x must be a nonempty square matrix");
  for (const Quaternion& q : x.entries) {
    if (!std::isfinite(q.t) || !std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
      throw Error(ErrorKind::NonFinite, "x has non-finite entries");
    const bool complex_ok = q.y == 0 && q.z == 0;
    if ((ring == Ring::C || ring == Ring::C_R) && !complex_ok)
      throw Error(ErrorKind::InvalidArgument, "x has quaternionic entries for a complex ring");
    if (ring == Ring::R && !(complex_ok && q.x == 0))
      throw Error(ErrorKind::InvalidArgument, "x has non-real entries for the real ring");
  }
}

std::string elementary_label(std::size_t l, std::size_t m) {
  return "e" + std::to_string(l + 1) + "_" + std::to_string(m + 1);
}

}  // namespace

AlgebraData matrix_algebra(Ring ring, const RingMatrix& x, std::optional<Scalar> R, double tol) {
  check_entries(ring, x);
  const std::size_t n = x.n;
  const std::size_t u = ring_units(ring);
  const std::size_t d = n * n * u;

  // Special condition and derived R.
  Scalar trace_inv;
  if (ring == Ring::C) {
    const Mat cx = complex_matrix(x);
    if (std::abs(cx.determinant()) <= tol * std::max(1.0, std::pow(cx.cwiseAbs().maxCoeff(), double(n))))
      throw Error(ErrorKind::SingularX, "x is not invertible");
    trace_inv = cx.inverse().trace();
  } else {
    const Mat cx = complex_image(x);
    if (std::abs(cx.determinant()) <= tol * std::max(1.0, std::pow(cx.cwiseAbs().maxCoeff(), double(2 * n))))
      throw Error(ErrorKind::SingularX, "x is not invertible");
    trace_inv = static_cast<double>(u) * cx.inverse().trace().real() / 2.0;
  }
  if (std::abs(trace_inv) <= tol)
    throw Error(ErrorKind::InconsistentR, "Tr(x^-1) vanishes, no R satisfies the special condition");
  const Scalar r_value = R.value_or(1.0 / trace_inv);
  if (std::abs(r_value * trace_inv - 1.0) > tol * 10)
    throw Error(ErrorKind::InconsistentR, "R does not satisfy the special condition for x");

  Tensor mult({d, d, d});
  Vec eps = Vec::Zero(d);
  std::vector<std::string> labels(d);
  auto index = [&](std::size_t l, std::size_t m, std::size_t w) { return (l * n + m) * u + w; };
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t w = 0; w < u; ++w) {
        const std::size_t a = index(l, m, w);
        labels[a] = (u > 1 ? std::string(kUnitNames[w]) : std::string()) + elementary_label(l, m);
        if (ring == Ring::C) {
          eps(a) = Scalar{x(m, l).t, x(m, l).x};
        } else {
          eps(a) = (x(m, l) * kUnits[w]).real();
        }
        for (std::size_t s = 0; s < n; ++s)
          for (std::size_t w2 = 0; w2 < u; ++w2) {
            const Quaternion prod = kUnits[w] * kUnits[w2];
            for (std::size_t w3 = 0; w3 < u; ++w3) {
              const double coeff = prod.t * kUnits[w3].t + prod.x * kUnits[w3].x +
                                   prod.y * kUnits[w3].y + prod.z * kUnits[w3].z;
              if (coeff != 0.0) mult(a, index(m, s, w2), index(l, s, w3)) = coeff;
            }
          }
      }

  AlgebraData alg = from_frobenius_form(mult, eps, r_value, std::move(labels));
  const ValidationReport rep = validate(alg, std::max(tol, 1e-9));
  if (!rep.special) throw Error(ErrorKind::InconsistentR, "constructed algebra is not special");
  return alg;
}

AlgebraData fhk_matrix_algebra(Ring ring, std::size_t n, Scalar R) {
  const double scale = static_cast<double>(ring_units(ring) * n);
  if (R.imag() != 0.0 && ring != Ring::C)
    throw Error(ErrorKind::InvalidArgument, "real algebras need a real R");
  if (ring == Ring::C) {
    RingMatrix x = RingMatrix::scalar(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) x.entries[k * n + k] = {scale * R.real(), scale * R.imag(), 0, 0};
    return matrix_algebra(ring, x, R);
  }
  return matrix_algebra(ring, RingMatrix::scalar(n, scale * R.real()), R);
}

AlgebraData direct_sum(const std::vector<AlgebraData>& parts, double tol) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "direct sum of no algebras");
  const Scalar R = parts.front().R;
  std::size_t d = 0;
  for (const auto& p : parts) {
    if (std::abs(p.R - R) > tol * std::max(1.0, std::abs(R)))
      throw Error(ErrorKind::MismatchedR, "summands carry different R");
    d += p.dim;
  }
  if (parts.size() == 1) return parts.front();
  Tensor C({d, d, d});
  Mat B = Mat::Zero(d, d);
  std::vector<std::string> labels;
  std::size_t off = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    for (std::size_t a = 0; a < p.dim; ++a) {
      labels.push_back("A" + std::to_string(k) + "." + p.labels[a]);
      for (std::size_t b = 0; b < p.dim; ++b) {
        B(off + a, off + b) = p.B(a, b);
        for (std::size_t c = 0; c < p.dim; ++c) C(off + a, off + b, off + c) = p.C(a, b, c);
      }
    }
    off += p.dim;
  }
  return build_algebra(std::move(C), std::move(B), R, std::move(labels));
}

GradedAlgebra group_algebra_cyclic(std::size_t m, Scalar R) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be positive");
  Tensor mult({m, m, m});
  Vec eps = Vec::Zero(m);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(a == 0 ? "e" : a == 1 ? "h" : "h^" + std::to_string(a));
    for (std::size_t b = 0; b < m; ++b) mult(a, b, (a + b) % m) = 1.0;
  }
  eps(0) = R * static_cast<double>(m);
  GradedAlgebra out;
  out.algebra = from_frobenius_form(mult, eps, R, std::move(labels));
  out.grading.group = AbelianGroup{{static_cast<int>(m)}};
  for (std::size_t a = 0; a < m; ++a) out.grading.block_of_basis.push_back(a);
  out.bicharacters = enumerate_bicharacters(out.grading.group);
  return out;
}

AlgebraData change_basis(const AlgebraData& alg, const Mat& P, std::vector<std::string> labels) {
  const std::size_t d = alg.dim;
  if (static_cast<std::size_t>(P.rows()) != d || static_cast<std::size_t>(P.cols()) != d)
    throw Error(ErrorKind::ShapeMismatch, "basis change must be d x d");
  const Mat Pinv = P.fullPivLu().inverse();
  // C'_klm = P(a,k) P(b,l) P(c,m) C_abc, applied one axis at a time.
  const Tensor Pt = Tensor::from_matrix(P);
  const std::size_t zero = 0;
  Tensor C = alg.C;
  for (int axis = 0; axis < 3; ++axis) {
    const std::size_t first = 0;
    C = tensordot(C, Pt, std::span(&first, 1), std::span(&zero, 1));  // rotates axes
  }
  const Mat B = Pinv * alg.B * Pinv.transpose();
  if (labels.empty()) labels.assign(d, "");
  for (std::size_t k = 0; k < d; ++k)
    if (labels[k].empty()) labels[k] = "f" + std::to_string(k);
  return build_algebra(std::move(C), B, alg.R, std::move(labels));
}

namespace {

Bicharacter z2_sign_bicharacter() {
  Bicharacter b{AbelianGroup{{2}}, Mat(2, 2)};
  b.table << 1.0, 1.0, 1.0, -1.0;
  return b;
}

GradedAlgebra z2_complex_with(std::size_t n, const RingMatrix& x, Scalar R) {
  GradedAlgebra out;
  out.algebra = matrix_algebra(Ring::C_R, x, R);
  out.grading.group = AbelianGroup{{2}};
  for (std::size_t a = 0; a < n * n * 2; ++a) out.grading.block_of_basis.push_back(a % 2);
  out.bicharacters = {z2_sign_bicharacter()};
  return out;
}

std::vector<double> sign_diagonal(std::size_t p, std::size_t q) {
  std::vector<double> u(p + q, 1.0);
  for (std::size_t k = p; k < p + q; ++k) u[k] = -1.0;
  return u;
}

}  // namespace

GradedAlgebra z2_matrix(std::size_t p, std::size_t q, Ring ring, Scalar R) {
  if (ring != Ring::C && ring != Ring::R)
    throw Error(ErrorKind::InvalidArgument, "z2_matrix takes the rings C or R");
  if (p == 0 || q == 0 || p == q) throw Error(ErrorKind::ShapeMismatch, "need p, q > 0 and p != q");
  const std::size_t n = p + q;
  RingMatrix x = RingMatrix::diagonal(sign_diagonal(p, q));
  const double scale = static_cast<double>(p) - static_cast<double>(q);
  for (auto& e : x.entries) e = {e.t * scale * R.real(), e.t * scale * R.imag(), 0, 0};
  if (ring == Ring::R && R.imag() != 0.0) throw Error(ErrorKind::InvalidArgument, "real algebra needs real R");
  GradedAlgebra out;
  out.algebra = matrix_algebra(ring, x, R);
  out.grading.group = AbelianGroup{{2}};
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m) out.grading.block_of_basis.push_back((l < p) == (m < p) ? 0 : 1);
  out.bicharacters = {z2_sign_bicharacter()};
  return out;
}

GradedAlgebra z2_complex(std::size_t n, Scalar R) {
  if (n == 0) throw Error(ErrorKind::ShapeMismatch, "n must be positive");
  return z2_complex_with(n, RingMatrix::scalar(n, 2.0 * static_cast<double>(n) * R.real()), R);
}

GradedAlgebra z2_complex(std::size_t p, std::size_t q, Scalar R) {
  if (p == 0 || q == 0 || p == q) throw Error(ErrorKind::ShapeMismatch, "need p, q > 0 and p != q");
  std::vector<double> u = sign_diagonal(p, q);
  const double scale = 2.0 * R.real() * (static_cast<double>(p) - static_cast<double>(q));
  for (double& v : u) v *= scale;
  return z2_complex_with(p + q, RingMatrix::diagonal(u), R);
}

Bicharacter klein_bicharacter(int alpha, int beta, int gamma) {
  Bicharacter b{AbelianGroup{{2, 2}}, Mat(4, 4)};
  const double a = alpha, be = beta, g = gamma;
  b.table << 1, 1, 1, 1,
             1, a * be, a, be,
             1, a, a * g, g,
             1, be, g, be * g;
  return b;
}

GradedAlgebra klein_quaternionic(std::size_t n, Scalar R) {
  if (n == 0) throw Error(ErrorKind::ShapeMismatch, "n must be positive");
  GradedAlgebra out;
  out.algebra = fhk_matrix_algebra(Ring::H_R, n, R);
  out.grading.group = AbelianGroup{{2, 2}};
  for (std::size_t a = 0; a < 4 * n * n; ++a) out.grading.block_of_basis.push_back(a % 4);
  for (int alpha : {1, -1})
    for (int beta : {1, -1})
      for (int gamma : {1, -1}) out.bicharacters.push_back(klein_bicharacter(alpha, beta, gamma));
  return out;
}

GradedAlgebra gamma_n(std::size_t n, Scalar R) {
  if (n == 0) throw Error(ErrorKind::ShapeMismatch, "n must be positive");
  const auto xi_pow = [n](long e) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
  };
  Mat X = Mat::Zero(n, n), Y = Mat::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k) X(k, k) = xi_pow(static_cast<long>(n - 1 - k));
  for (std::size_t k = 0; k + 1 < n; ++k) Y(k, k + 1) = 1.0;
  Y(n - 1, 0) += 1.0;

  const std::size_t d = n * n;
  Mat P(d, d);
  std::vector<std::string> labels(d);
  Mat Xi = Mat::Identity(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Mat M = Xi;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i + n * j;
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = 0; m < n; ++m) P(l * n + m, k) = M(l, m);
      labels[k] = "X^" + std::to_string(i) + "Y^" + std::to_string(j);
      M = M * Y;
    }
    Xi = Xi * X;
  }

  GradedAlgebra out;
  out.algebra = change_basis(fhk_matrix_algebra(Ring::C, n, R), P, std::move(labels));
  out.grading.group = AbelianGroup{{static_cast<int>(n), static_cast<int>(n)}};
  for (std::size_t k = 0; k < d; ++k) out.grading.block_of_basis.push_back(k);
  Bicharacter b{out.grading.group, Mat(d, d)};
  for (std::size_t h = 0; h < d; ++h)
    for (std::size_t g = 0; g < d; ++g) {
      const long i = h % n, j = h / n, i2 = g % n, j2 = g / n;
      const long e = ((i * j2 - i2 * j) % long(n) + long(n)) % long(n);
      b.table(h, g) = xi_pow(e);
    }
  out.bicharacters = {b};
  return out;
}

}  // namespace spinsum
