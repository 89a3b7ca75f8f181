#include <algorithm>

#include "lppshock/rng.hpp"
#include "lppshock/simd/kernels.hpp"

namespace lppshock::simd {
namespace {

void exp_fill_scalar(const DiagonalRun& run, std::size_t npairs, double* out) {
  const PhiloxKey key = key_of(run.master_seed);
  for (std::size_t k = 0; k < npairs; ++k) {
    const PhiloxCounter c{static_cast<std::uint32_t>(run.a0 + static_cast<std::int64_t>(k)),
                          static_cast<std::uint32_t>(run.d), run.replica, run.tag};
    const auto r = philox4x32_10(c, key);
    out[2 * k] = 0.0 - log_unit(uniform_open_closed(r[0], r[1]));
    out[2 * k + 1] = 0.0 - log_unit(uniform_open_closed(r[2], r[3]));
  }
}

void maxplus_scalar(const double* left, const double* down, const double* w, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = std::max(left[k], down[k]) + w[k];
}

void maxplus_arg_scalar(const double* left, const double* down, const double* w, double* out,
                        std::uint8_t* from_left, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const bool l = left[k] >= down[k];
    from_left[k] = l ? 1 : 0;
    out[k] = (l ? left[k] : down[k]) + w[k];
  }
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", exp_fill_scalar, maxplus_scalar, maxplus_arg_scalar};
  return set;
}

}  // namespace lppshock::simd
