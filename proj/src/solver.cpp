#include "spinsum/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>

#include "spinsum/constructors.hpp"
#include "spinsum/error.hpp"
#include "spinsum/evaluator.hpp"

namespace spinsum {

// ------------------------------------------------------------ idempotents

Mat primitive_idempotents(const AlgebraData& alg) {
  const std::size_t d = alg.dim;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        if (std::abs(alg.mult(a, b, c) - alg.mult(b, a, c)) > 1e-10 * std::max(1.0, alg.mult.max_abs()))
          throw Error(ErrorKind::InvalidArgument, "algebra is not commutative");

  // A generic element separates the primitive idempotents by eigenvalue.
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec x(d);
    for (std::size_t a = 0; a < d; ++a)
      x(a) = Scalar{1.0 / (a + 1.37 + attempt), 0.31 * std::sin(1.0 + a + 2.0 * attempt)};
    Eigen::ComplexEigenSolver<Mat> es(left_multiplication(alg, x));
    const Vec ev = es.eigenvalues();
    double gap = 1e300;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) gap = std::min(gap, std::abs(ev(i) - ev(j)));
    if (d > 1 && gap < 1e-6) continue;

    std::vector<Vec> idem;
    bool ok = true;
    for (std::size_t k = 0; k < d && ok; ++k) {
      Vec v = es.eigenvectors().col(k);
      const Vec v2 = multiply(alg, v, v);
      // v^2 = c v for an eigenvector of a semisimple commutative algebra.
      Eigen::Index piv;
      v.cwiseAbs().maxCoeff(&piv);
      const Scalar c = v2(piv) / v(piv);
      if (std::abs(c) < 1e-12) {
        ok = false;
        break;
      }
      v /= c;
      ok = relative_residual(Vec(multiply(alg, v, v)), v) < 1e-8;
      idem.push_back(v);
    }
    if (!ok) throw Error(ErrorKind::InvalidArgument, "algebra is not semisimple");

    // Deterministic order: lexicographic on rounded coordinates.
    auto key = [](const Vec& v) {
      std::vector<long long> k;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        k.push_back(std::llround(v(i).real() * 1e8));
        k.push_back(std::llround(v(i).imag() * 1e8));
      }
      return k;
    };
    std::sort(idem.begin(), idem.end(), [&](const Vec& a, const Vec& b) { return key(a) > key(b); });
    Mat P(d, d);
    for (std::size_t k = 0; k < d; ++k) P.col(k) = idem[k];
    return P;
  }
  throw Error(ErrorKind::InvalidArgument, "could not separate the idempotents");
}

// ------------------------------------------------------------ system

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

struct SparseDir {
  struct Entry {
    Eigen::Index out, in;  // flat pair indices (k*d+l, i*d+j)
    Scalar v;
  };
  std::vector<Entry> entries;
};

// The crossing axioms on a fixed algebra, split into the linear part
// (eliminated up front) and the polynomial part (solved numerically).
class CrossingSystem {
 public:
  explicit CrossingSystem(const AlgebraData& alg) : alg_(alg), d_(alg.dim), D_(d_ * d_) {
    Id_ = Mat::Identity(d_, d_);
    Mm_ = Mat::Zero(d_, D_);
    for (std::size_t a = 0; a < d_; ++a)
      for (std::size_t b = 0; b < d_; ++b)
        for (std::size_t c = 0; c < d_; ++c) Mm_(c, a * d_ + b) = alg.mult(a, b, c);
    MmI_ = kron(Mm_, Id_);
    IMm_ = kron(Id_, Mm_);
    build_affine_space();
  }

  std::size_t unknowns() const { return basis_.size(); }

  Mat lambda_of(const Vec& t) const {
    Mat L = L0_;
    for (std::size_t j = 0; j < basis_.size(); ++j)
      for (const auto& e : basis_[j].entries) L(e.out, e.in) += t(j) * e.v;
    return L;
  }

  // Residual vector; with jac != nullptr also its Jacobian in t.
  Vec residual(const Mat& L, Mat* jac) const {
    const Mat P1 = kron(L, Id_), P2 = kron(Id_, L);
    const Mat A = P2 * P1, Bm = P1 * P2;
    const Mat rC = L * MmI_ - IMm_ * Bm;
    const Mat rM = (L * IMm_ - MmI_ * A);
    const Mat rII = L * L - Mat::Identity(D_, D_);
    const Mat rIII = P1 * A - P2 * Bm;
    const std::size_t n = rC.size() + rM.size() + rII.size() + rIII.size();
    Vec r(n);
    std::size_t off = 0;
    for (const Mat* m : {&rC, &rM, &rII, &rIII}) {
      r.segment(off, m->size()) = Eigen::Map<const Vec>(m->data(), m->size());
      off += m->size();
    }
    if (!jac) return r;

    jac->resize(n, basis_.size());
    jac->setZero();
    // Products with dL (x) I and I (x) dL are formed from their sparse
    // entries; the dense factors below are shared by every direction.
    const Mat IMmP1 = IMm_ * P1, MmIP2 = MmI_ * P2;
    const Eigen::Index Di = static_cast<Eigen::Index>(D_), d3 = static_cast<Eigen::Index>(D_ * d_);
    struct Trip {
      Eigen::Index r, c;
      Scalar v;
    };
    std::vector<Trip> t1, t2;
    std::vector<Eigen::Index> rows1, rows2;
    Mat S1, S2;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      t1.clear();
      t2.clear();
      for (const auto& e : basis_[j].entries)
        for (Eigen::Index z = 0; z < static_cast<Eigen::Index>(d_); ++z) {
          t1.push_back({e.out * static_cast<Eigen::Index>(d_) + z, e.in * static_cast<Eigen::Index>(d_) + z, e.v});
          t2.push_back({z * Di + e.out, z * Di + e.in, e.v});
        }
      Scalar* col = jac->col(j).data();
      Eigen::Map<Mat> dC(col, Di, d3);
      Eigen::Map<Mat> dM(col + Di * d3, Di, d3);
      Eigen::Map<Mat> dII(col + 2 * Di * d3, Di, Di);
      Eigen::Map<Mat> dIII(col + 2 * Di * d3 + Di * Di, d3, d3);
      for (const auto& e : basis_[j].entries) {
        dC.row(e.out) += e.v * MmI_.row(e.in);
        dM.row(e.out) += e.v * IMm_.row(e.in);
        dII.row(e.out) += e.v * L.row(e.in);
        dII.col(e.in) += e.v * L.col(e.out);
      }
      // Only the rows hit by the sparse factors are nonzero in S1 and S2, so
      // the dense products run over those rows alone.
      auto compact = [&](const std::vector<Trip>& ts, std::vector<Eigen::Index>& rows) {
        rows.clear();
        for (const auto& e : ts) rows.push_back(e.r);
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
      };
      compact(t1, rows1);
      compact(t2, rows2);
      const auto slot = [](const std::vector<Eigen::Index>& rows, Eigen::Index r) {
        return static_cast<Eigen::Index>(std::lower_bound(rows.begin(), rows.end(), r) - rows.begin());
      };
      S1.setZero(static_cast<Eigen::Index>(rows1.size()), d3);
      S2.setZero(static_cast<Eigen::Index>(rows2.size()), d3);
      for (const auto& e : t1) {
        S1.row(slot(rows1, e.r)) += e.v * P2.row(e.c);  // D1 P2
        dM.col(e.c) -= e.v * MmIP2.col(e.r);            // MmI P2 D1
        dIII.row(e.r) += e.v * A.row(e.c);              // D1 A
        dIII.col(e.c) += e.v * Bm.col(e.r);             // Bm D1
      }
      for (const auto& e : t2) {
        S2.row(slot(rows2, e.r)) += e.v * P1.row(e.c);  // D2 P1
        dC.col(e.c) -= e.v * IMmP1.col(e.r);            // IMm P1 D2
        dIII.row(e.r) -= e.v * Bm.row(e.c);             // D2 Bm
        dIII.col(e.c) -= e.v * A.col(e.r);              // A D2
      }
      dC.noalias() -= IMm_(Eigen::all, rows1) * S1;
      dM.noalias() -= MmI_(Eigen::all, rows2) * S2;
      dIII.noalias() += P1(Eigen::all, rows2) * S2;
      dIII.noalias() -= P2(Eigen::all, rows1) * S1;
    }
    return r;
  }

 private:
  // Homogeneous parts of: compatibility with B (both orientations), the
  // unit passing through the crossing, and the ribbon condition.
  Vec linear_part(const Tensor& lam) const {
    const std::size_t d = d_;
    const Mat& Bi = alg_.Binv;
    const Mat& B = alg_.B;
    std::vector<Scalar> out;
    out.reserve(3 * d * d * d * d);
    for (std::size_t o = 0; o < d; ++o)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t b = 0; b < d; ++b) {
            Scalar lhs{}, rhs{};
            for (std::size_t k = 0; k < d; ++k) lhs += lam(k, o, c, b) * Bi(a, k);
            for (std::size_t l = 0; l < d; ++l) rhs += lam(o, l, a, c) * Bi(l, b);
            out.push_back(lhs - rhs);
          }
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t z = 0; z < d; ++z)
          for (std::size_t a = 0; a < d; ++a) {
            Scalar lhs{}, rhs{};
            for (std::size_t y = 0; y < d; ++y) {
              lhs += lam(k, l, a, y) * B(y, z);
              rhs += B(k, y) * lam(l, z, y, a);
            }
            out.push_back(lhs - rhs);
          }
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t a = 0; a < d; ++a) {
          Scalar left{}, right{};
          for (std::size_t x = 0; x < d; ++x) {
            left += alg_.unit(x) * lam(k, l, x, a);
            right += alg_.unit(x) * lam(k, l, a, x);
          }
          out.push_back(left);
          out.push_back(right);
        }
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t a = 0; a < d; ++a) {
        Scalar right{}, left{};
        for (std::size_t l = 0; l < d; ++l)
          for (std::size_t y = 0; y < d; ++y)
            for (std::size_t z = 0; z < d; ++z) {
              right += lam(k, l, a, y) * Bi(l, z) * B(y, z);
              left += B(y, z) * lam(l, k, z, a) * Bi(y, l);
            }
        out.push_back(right - left);
      }
    return Eigen::Map<Vec>(out.data(), static_cast<Eigen::Index>(out.size()));
  }

  void build_affine_space() {
    const std::size_t n = D_ * D_;
    // The canonical crossing satisfies every linear condition, so it serves as
    // the particular solution; the free directions span the kernel.
    L0_ = Mat::Zero(D_, D_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) L0_(j * d_ + i, i * d_ + j) = 1.0;

    Tensor unit_t({d_, d_, d_, d_});
    Mat M;
    for (std::size_t idx = 0; idx < n; ++idx) {
      unit_t[idx] = 1.0;
      const Vec col = linear_part(unit_t);
      unit_t[idx] = 0.0;
      if (idx == 0) M.resize(col.size(), n);
      M.col(idx) = col;
    }
    // Reduced row echelon form; the kernel basis is sparse in the free columns.
    const double tol = 1e-10 * std::max(1.0, M.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < static_cast<Eigen::Index>(n) && row < M.rows(); ++col) {
      Eigen::Index best;
      const double mag = M.col(col).segment(row, M.rows() - row).cwiseAbs().maxCoeff(&best);
      if (mag <= tol) continue;
      best += row;
      M.row(row).swap(M.row(best));
      M.row(row) /= M(row, col);
      for (Eigen::Index r = 0; r < M.rows(); ++r)
        if (r != row && std::abs(M(r, col)) > 0) M.row(r) -= M(r, col) * M.row(row);
      pivots.push_back(col);
      ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_pivot[f]) continue;
      SparseDir dir;
      auto push = [&](std::size_t flat, Scalar v) {
        // flat index of (k,l,i,j) -> (k*d+l, i*d+j)
        dir.entries.push_back({static_cast<Eigen::Index>(flat / D_), static_cast<Eigen::Index>(flat % D_), v});
      };
      push(f, 1.0);
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        const Scalar v = M(r, f);
        if (std::abs(v) > tol) push(pivots[r], -v);
      }
      basis_.push_back(std::move(dir));
    }
  }

  const AlgebraData& alg_;
  std::size_t d_, D_;
  Mat Id_, Mm_, MmI_, IMm_, L0_;
  std::vector<SparseDir> basis_;
};

struct Candidate {
  int start;
  Mat L;  // idempotent basis, (k*d+l, i*d+j)
};

// Damped Gauss-Newton (Levenberg-Marquardt) on the complex system.
bool run_start(const CrossingSystem& sys, Vec t, bool real, Mat& out) {
  Mat L = sys.lambda_of(t);
  Mat J;
  Vec r = sys.residual(L, &J);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  double checkpoint = cost;
  for (int it = 0; it < 200; ++it) {
    if (r.cwiseAbs().maxCoeff() < 1e-13) break;
    Mat H = Mat::Zero(J.cols(), J.cols());
    H.selfadjointView<Eigen::Lower>().rankUpdate(J.adjoint());
    H = H.selfadjointView<Eigen::Lower>();
    const Vec g = J.adjoint() * r;
    bool accepted = false;
    while (mu < 1e12) {
      Mat A = H;
      A.diagonal().array() += mu * (1.0 + H.diagonal().real().array());
      Vec step = A.ldlt().solve(-g);
      if (real) step = step.real().cast<Scalar>();
      const Vec t2 = t + step;
      const Mat L2 = sys.lambda_of(t2);
      const Vec r2 = sys.residual(L2, nullptr);
      const double c2 = r2.squaredNorm();
      if (std::isfinite(c2) && c2 < cost) {
        t = t2;
        L = L2;
        cost = c2;
        mu = std::max(mu / 5.0, 1e-15);
        accepted = true;
        break;
      }
      mu *= 8.0;
    }
    if (!accepted) break;
    r = sys.residual(L, &J);
    // Stalled away from a root: give up on this start early.
    if (it % 10 == 9) {
      if (cost > 1e-8 && cost > 0.9 * checkpoint) break;
      checkpoint = cost;
    }
  }
  if (r.cwiseAbs().maxCoeff() > 1e-10) return false;
  out = L;
  return true;
}

bool is_real(const AlgebraData& alg) {
  const double scale = std::max({alg.C.max_abs(), alg.B.cwiseAbs().maxCoeff(), 1.0});
  double im = std::abs(alg.R.imag());
  for (std::size_t i = 0; i < alg.C.size(); ++i) im = std::max(im, std::abs(alg.C[i].imag()));
  im = std::max(im, alg.B.imag().cwiseAbs().maxCoeff());
  return im <= 1e-14 * scale;
}

int thread_count(const SolveOptions& opts) {
  if (opts.threads > 0) return opts.threads;
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SPIN_TQFT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

Tensor to_basis(const Mat& Lidem, const Mat& P, std::size_t d) {
  // lambda_e(k,l,i,j) = P(k,k')P(l,l') lambda_u(k',l',i',j') Pinv(i',i)Pinv(j',j)
  const Mat Pinv = P.inverse();
  const Mat PP = kron(P, P);
  const Mat Q = PP * Lidem * kron(Pinv, Pinv);
  Tensor t({d, d, d, d});
  for (std::size_t o = 0; o < d * d; ++o)
    for (std::size_t i = 0; i < d * d; ++i) t[o * d * d + i] = Q(o, i);
  return t;
}

}  // namespace

SolveResult solve_crossings(const AlgebraData& alg, const SolveOptions& opts) {
  if (!(opts.tol > 0) || !(opts.dedup_radius > opts.tol))
    throw Error(ErrorKind::InvalidArgument, "need tol > 0 and dedup_radius > tol");
  if (alg.dim > 6) throw Error(ErrorKind::InvalidArgument, "solver is limited to dimension 6");
  const std::size_t d = alg.dim;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < a; ++b)
      for (std::size_t c = 0; c < d; ++c)
        if (std::abs(alg.mult(a, b, c) - alg.mult(b, a, c)) > 1e-12 * std::max(1.0, alg.mult.max_abs()))
          throw Error(ErrorKind::InvalidArgument, "solver needs a commutative algebra");
  bool real = opts.field == SolveOptions::Field::Real;
  if (opts.field == SolveOptions::Field::Auto) real = is_real(alg);
  // Real solutions are sought in the given basis with real unknowns; complex
  // ones in the idempotent basis, where the linear conditions are sparse.
  const Mat P = real ? Mat(Mat::Identity(d, d)) : primitive_idempotents(alg);
  const AlgebraData work_alg = real ? alg : change_basis(alg, P);
  const CrossingSystem sys(work_alg);
  const std::size_t k = sys.unknowns();

  SolveResult res;
  res.seed = opts.seed;
  res.real = real;
  std::vector<Candidate> found;
  std::mutex mu;
  // A non-positive budget scales with the number of free unknowns.
  const int starts = opts.starts > 0 ? opts.starts : std::max(100, 150 * static_cast<int>(sys.unknowns()));
  const int workers = std::max(1, std::min(thread_count(opts), starts));
  auto work = [&](int w) {
    for (int s = w; s < starts; s += workers) {
      // Each start owns a generator derived from (seed, start) so results do
      // not depend on the thread layout.
      std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                        static_cast<std::uint32_t>(s)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal(0.0, 1.0);
      // Log-uniform scale so both small and large basins get visited.
      std::uniform_real_distribution<double> log_scale(std::log(0.1), std::log(3.0));
      const double scale = std::exp(log_scale(rng));
      Vec t(k);
      for (std::size_t j = 0; j < k; ++j) t(j) = Scalar{normal(rng), real ? 0.0 : normal(rng)} * scale;
      Mat L;
      if (k == 0) {
        L = sys.lambda_of(t);
        if (sys.residual(L, nullptr).cwiseAbs().maxCoeff() > 1e-10) continue;
      } else if (!run_start(sys, t, real, L)) {
        continue;
      }
      std::lock_guard<std::mutex> lock(mu);
      found.push_back({s, std::move(L)});
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) { return a.start < b.start; });
  res.starts_used = starts;
  res.converged = static_cast<int>(found.size());

  for (const Candidate& c : found) {
    CrossingMap cr{to_basis(c.L, P, d)};
    bool duplicate = false;
    for (std::size_t i = 0; i < res.solutions.size(); ++i)
      if (max_abs_diff(res.solutions[i].lambda, cr.lambda) <= opts.dedup_radius) {
        ++res.hits[i];
        duplicate = true;
        break;
      }
    if (duplicate) continue;
    const AxiomReport rep = check_axioms(alg, cr, opts.tol);
    if (!rep.spin_model()) continue;
    if (static_cast<int>(res.solutions.size()) >= opts.max_solutions) {
      res.complete = false;
      break;
    }
    const auto& r = rep.residuals;
    res.residuals.push_back(std::max({r.compat_B, r.compat_C, r.rII, r.rIII, r.ribbon}));
    res.solutions.push_back(std::move(cr));
    res.hits.push_back(1);
  }

  // Deterministic presentation order: canonical first, then by real parts.
  std::vector<std::size_t> order(res.solutions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const Tensor canon = canonical_crossing(d).lambda;
  auto key = [&](std::size_t i) {
    std::vector<long long> kv;
    const Tensor& t = res.solutions[i].lambda;
    kv.push_back(max_abs_diff(t, canon) < opts.dedup_radius ? 0 : 1);
    for (std::size_t e = 0; e < t.size(); ++e) {
      kv.push_back(std::llround(t[e].real() * 1e6));
      kv.push_back(std::llround(t[e].imag() * 1e6));
    }
    return kv;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  SolveResult sorted = res;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.solutions[i] = res.solutions[order[i]];
    sorted.residuals[i] = res.residuals[order[i]];
    sorted.hits[i] = res.hits[order[i]];
  }
  return sorted;
}

// ------------------------------------------------------------ classification

std::string to_string(Family f) {
  switch (f) {
    case Family::EtaEqualsChi: return "eta=chi";
    case Family::EtaEqualsMinusChi: return "eta=-chi";
    case Family::Mixed: return "mixed";
    case Family::Unclassified: return "unclassified";
  }
  return "unclassified";
}

namespace {

// "2-2g", "1-g", "-g", "2" for 2^{b - a g}.
std::string exponent(int b, int a) {
  std::string out;
  if (b != 0 || a == 0) out += std::to_string(b);
  if (a != 0) {
    out += "-";
    if (a != 1) out += std::to_string(a);
    out += "g";
  }
  return out;
}

bool log2_exact(double x, int& e) {
  if (!(x > 0)) return false;
  const double l = std::log2(x);
  e = static_cast<int>(std::lround(l));
  return std::abs(l - e) < 1e-9;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

Classification classify_solution(const AlgebraData& alg, const CrossingMap& cr, double tol) {
  Classification out;
  out.eta = eta(alg, cr, tol);
  out.chi = chi(alg, cr, tol);
  const double scale = std::max(out.eta.cwiseAbs().maxCoeff(), 1e-300);
  const Vec diff = out.eta - out.chi, sum = out.eta + out.chi;
  const bool eq = diff.cwiseAbs().maxCoeff() <= tol * scale;
  const bool neg = sum.cwiseAbs().maxCoeff() <= tol * scale;

  Mat P;
  try {
    P = primitive_idempotents(alg);
  } catch (const Error&) {
    out.family = eq ? Family::EtaEqualsChi : neg ? Family::EtaEqualsMinusChi : Family::Unclassified;
    return out;
  }
  // eta = R^-2 sum c_k u_k and chi = R^-2 sum s_k c_k u_k; with
  // eps(u_k) = w_k R the invariant is R^{2-2g} sum w_k s_k^parity c_k^g.
  const std::size_t d = alg.dim;
  const Mat Pinv = P.inverse();
  const Vec a = Pinv * out.eta, b = Pinv * out.chi;
  const Scalar R2 = alg.R * alg.R;
  std::vector<double> mult(d);
  bool real_ok = true;
  for (std::size_t k = 0; k < d; ++k) {
    const Scalar c = a(k) * R2;
    const Scalar w = frobenius_form(alg, Vec(P.col(k))) / alg.R;
    if (std::abs(c.imag()) > 1e-9 || std::abs(w.imag()) > 1e-9 || std::abs(c) < 1e-12) real_ok = false;
    const Scalar ratio = std::abs(a(k)) > 1e-300 ? b(k) / a(k) : Scalar{0};
    int s = 0;
    if (std::abs(ratio - 1.0) <= 1e-7) s = 1;
    if (std::abs(ratio + 1.0) <= 1e-7) s = -1;
    if (s == 0) real_ok = false;
    out.weights.push_back(c.real());
    out.signs.push_back(s);
    mult[k] = w.real();
  }
  out.form_weights = mult;
  if (!real_ok) {
    out.family = Family::Unclassified;
    return out;
  }
  const bool any_pos = std::count(out.signs.begin(), out.signs.end(), 1) > 0;
  const bool any_neg = std::count(out.signs.begin(), out.signs.end(), -1) > 0;
  out.family = any_pos && any_neg ? Family::Mixed : any_neg ? Family::EtaEqualsMinusChi : Family::EtaEqualsChi;

  // Group equal (c, s) terms; constants first, then by decreasing c.
  struct Term {
    double c;
    int s;
    double n;
  };
  std::vector<Term> terms;
  for (std::size_t k = 0; k < d; ++k) {
    bool merged = false;
    for (auto& t : terms)
      if (std::abs(t.c - out.weights[k]) < 1e-9 && t.s == out.signs[k]) {
        t.n += mult[k];
        merged = true;
      }
    if (!merged) terms.push_back({out.weights[k], out.signs[k], mult[k]});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (std::abs(x.c - y.c) > 1e-9) return x.c > y.c;
    return x.s > y.s;
  });
  std::vector<std::string> parts;
  for (const auto& t : terms) {
    std::string p = t.s < 0 ? "P(s)" : "";
    int ce = 0, ne = 0;
    const bool c_pow = log2_exact(t.c, ce) && ce <= 0;
    if (c_pow && ce == 0) {
      p = (std::abs(t.n - 1.0) < 1e-9 && !p.empty()) ? p : format_double(t.n) + p;
    } else if (c_pow && log2_exact(t.n, ne)) {
      p += "2^{" + exponent(ne, -ce) + "}";
    } else if (c_pow) {
      p = format_double(t.n) + p + "2^{" + exponent(0, -ce) + "}";
    } else {
      p = format_double(t.n) + p + "(" + format_double(t.c) + ")^g";
    }
    parts.push_back(p);
  }
  std::string body;
  for (std::size_t i = 0; i < parts.size(); ++i) body += (i ? "+" : "") + parts[i];
  out.tag = (parts.size() > 1 ? "(" + body + ")" : body) + "R^{2-2g}";
  return out;
}

}  // namespace spinsum
