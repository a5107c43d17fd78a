// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "spinsum/kernels.hpp"

namespace spinsum::kernels::avx2 {
namespace {

// Two interleaved complex numbers per register: [re0, im0, re1, im1].
inline __m256d cmul_acc(__m256d acc, __m256d are, __m256d aim, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bswap)));
}

}  // namespace

void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n,
           bool accumulate) {
  if (!accumulate) std::fill(c, c + m * n, cplx{});
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = reinterpret_cast<double*>(c + i * n);
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx{}) continue;
      const __m256d are = _mm256_set1_pd(aip.real());
      const __m256d aim = _mm256_set1_pd(aip.imag());
      const double* brow = reinterpret_cast<const double*>(b + p * n);
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        __m256d acc = _mm256_loadu_pd(crow + 2 * j);
        acc = cmul_acc(acc, are, aim, _mm256_loadu_pd(brow + 2 * j));
        _mm256_storeu_pd(crow + 2 * j, acc);
      }
      for (; j < n; ++j) c[i * n + j] += aip * b[p * n + j];
    }
  }
}

void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const std::size_t n2 = n & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d acc = _mm256_loadu_pd(yd + 2 * i);
    acc = cmul_acc(acc, are, aim, _mm256_loadu_pd(xd + 2 * i));
    _mm256_storeu_pd(yd + 2 * i, acc);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double max_abs_diff(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d worst = _mm256_setzero_pd();
  const std::size_t n2 = n & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xd + 2 * i), _mm256_loadu_pd(yd + 2 * i));
    const __m256d sq = _mm256_mul_pd(d, d);
    // [re0^2+im0^2, same, re1^2+im1^2, same]
    const __m256d mag2 = _mm256_hadd_pd(sq, sq);
    worst = _mm256_max_pd(worst, mag2);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, worst);
  double best2 = std::max({lanes[0], lanes[1], lanes[2], lanes[3]});
  double result = std::sqrt(best2);
  for (; i < n; ++i) result = std::max(result, std::abs(x[i] - y[i]));
  return result;
}

}  // namespace spinsum::kernels::avx2
