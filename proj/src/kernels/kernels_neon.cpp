// AArch64 variant. NEON is baseline on AArch64, so no runtime check is needed.
#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "spinsum/kernels.hpp"

namespace spinsum::kernels::neon {
namespace {

// One complex number per register: [re, im].
inline float64x2_t cmul_acc(float64x2_t acc, double are, double aim, float64x2_t b) {
  const float64x2_t bswap = vextq_f64(b, b, 1);
  const float64x2_t sign = {-1.0, 1.0};
  acc = vfmaq_n_f64(acc, b, are);
  return vfmaq_f64(acc, vmulq_n_f64(bswap, aim), sign);
}

}  // namespace

void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n,
           bool accumulate) {
  if (!accumulate) std::fill(c, c + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = reinterpret_cast<double*>(c + i * n);
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx{}) continue;
      const double* brow = reinterpret_cast<const double*>(b + p * n);
      for (std::size_t j = 0; j < n; ++j) {
        float64x2_t acc = vld1q_f64(crow + 2 * j);
        vst1q_f64(crow + 2 * j, cmul_acc(acc, aip.real(), aip.imag(), vld1q_f64(brow + 2 * j)));
      }
    }
  }
}

void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t acc = vld1q_f64(yd + 2 * i);
    vst1q_f64(yd + 2 * i, cmul_acc(acc, alpha.real(), alpha.imag(), vld1q_f64(xd + 2 * i)));
  }
}

double max_abs_diff(std::size_t n, const cplx* x, const cplx* y) {
  double worst = 0.0;
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t d = vsubq_f64(vld1q_f64(xd + 2 * i), vld1q_f64(yd + 2 * i));
    worst = std::max(worst, vaddvq_f64(vmulq_f64(d, d)));
  }
  return std::sqrt(worst);
}

}  // namespace spinsum::kernels::neon
