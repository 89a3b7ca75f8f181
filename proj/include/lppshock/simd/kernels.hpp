#pragma once

#include <cstddef>
#include <cstdint>

namespace lppshock::simd {

/// Sites i = 2*a0 .. 2*(a0+npairs)-1 on anti-diagonal i + j = d. Sites 2a and 2a+1 share
/// the Philox counter (a, d, replica, tag): words 0,1 feed the even site, words 2,3 the odd one.
struct DiagonalRun {
  std::uint64_t master_seed;
  std::uint32_t replica;
  std::uint32_t tag;
  std::int64_t d;
  std::int64_t a0;
};

/// out[k] = unit-mean exponential attached to site i = 2*a0 + k, k < 2*npairs.
using ExpFillFn = void (*)(const DiagonalRun& run, std::size_t npairs, double* out);
/// out[k] = max(left[k], down[k]) + w[k].
using MaxPlusFn = void (*)(const double* left, const double* down, const double* w, double* out, std::size_t n);
/// As MaxPlusFn; from_left[k] = 1 when left[k] >= down[k] (horizontal wins ties).
using MaxPlusArgFn = void (*)(const double* left, const double* down, const double* w, double* out,
                              std::uint8_t* from_left, std::size_t n);

struct KernelSet {
  const char* name;
  ExpFillFn exp_fill;
  MaxPlusFn maxplus;
  MaxPlusArgFn maxplus_arg;
};

const KernelSet& scalar_kernels();
/// nullptr when the build has no AVX2 variant or the CPU lacks AVX2+FMA.
const KernelSet* avx2_kernels();
/// AVX2 when available unless LPPSHOCK_SIMD=scalar is set.
const KernelSet& active_kernels();

namespace detail {
void exp_fill_avx2(const DiagonalRun& run, std::size_t npairs, double* out);
void maxplus_avx2(const double* left, const double* down, const double* w, double* out, std::size_t n);
void maxplus_arg_avx2(const double* left, const double* down, const double* w, double* out,
                      std::uint8_t* from_left, std::size_t n);
}  // namespace detail

}  // namespace lppshock::simd
