#include <cstdlib>
#include <cstring>

#include "spinsum/kernels.hpp"

namespace spinsum::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SPINSUM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &scalar::cgemm, &scalar::caxpy, &scalar::max_abs_diff};
  return table;
}

const KernelTable* simd_table() {
#if defined(SPINSUM_HAVE_AVX2)
  static const KernelTable table{"avx2", &avx2::cgemm, &avx2::caxpy, &avx2::max_abs_diff};
  static const bool ok = cpu_has_avx2();
  return ok ? &table : nullptr;
#elif defined(SPINSUM_HAVE_NEON)
  static const KernelTable table{"neon", &neon::cgemm, &neon::caxpy, &neon::max_abs_diff};
  return &table;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("SPINSUM_KERNEL");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_table();
    const KernelTable* simd = simd_table();
    return simd != nullptr ? *simd : scalar_table();
  }();
  return chosen;
}

}  // namespace spinsum::kernels
