#pragma once

// Dense complex kernels used by the contraction engine. Each kernel has a
// portable scalar reference and, where the CPU allows it, a SIMD variant
// picked once at startup. All variants take row-major interleaved
// std::complex<double> buffers.

#include <complex>
#include <cstddef>
#include <string_view>

namespace spinsum::kernels {

using cplx = std::complex<double>;

// c[m x n] (+)= a[m x k] * b[k x n]
using CgemmFn = void (*)(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
                         std::size_t n, bool accumulate);
// y[i] += alpha * x[i]
using CaxpyFn = void (*)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
// max_i |x[i] - y[i]|
using MaxAbsDiffFn = double (*)(std::size_t n, const cplx* x, const cplx* y);

struct KernelTable {
  std::string_view name;
  CgemmFn cgemm;
  CaxpyFn caxpy;
  MaxAbsDiffFn max_abs_diff;
};

namespace scalar {
void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n,
           bool accumulate);
void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y);
}  // namespace scalar

#if defined(SPINSUM_HAVE_AVX2)
namespace avx2 {
void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n,
           bool accumulate);
void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y);
}  // namespace avx2
#endif

#if defined(SPINSUM_HAVE_NEON)
namespace neon {
void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n,
           bool accumulate);
void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y);
}  // namespace neon
#endif

const KernelTable& scalar_table();
// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* simd_table();

// The table in use. Chosen on first call: the SIMD variant when available,
// unless SPINSUM_KERNEL=scalar is set in the environment.
const KernelTable& active();

inline void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
                  std::size_t n, bool accumulate = false) {
  active().cgemm(a, b, c, m, k, n, accumulate);
}
inline void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  active().caxpy(n, alpha, x, y);
}
inline double max_abs_diff(std::size_t n, const cplx* x, const cplx* y) {
  return active().max_abs_diff(n, x, y);
}

}  // namespace spinsum::kernels
