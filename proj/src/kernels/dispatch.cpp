#include <cstdlib>
#include <string_view>

#include "synergy/kernels.hpp"

namespace synergy::kernels {

#ifdef SYNERGY_HAVE_AVX2
const KernelTable* avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#ifdef SYNERGY_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("SYNERGY_SIMD");
    if (forced && std::string_view(forced) == "scalar") return scalar_table();
    if (const KernelTable* simd = avx2_table()) return *simd;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace synergy::kernels
