#include <cstdlib>
#include <cstring>

#include "lppshock/simd/kernels.hpp"

namespace lppshock::simd {

const KernelSet* avx2_kernels() {
#if defined(LPPSHOCK_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelSet set{"avx2", detail::exp_fill_avx2, detail::maxplus_avx2, detail::maxplus_arg_avx2};
  return ok ? &set : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() {
  static const KernelSet* chosen = [] {
    const char* env = std::getenv("LPPSHOCK_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
    const KernelSet* v = avx2_kernels();
    return v != nullptr ? v : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace lppshock::simd
