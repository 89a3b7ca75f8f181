#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "lppshock/simd/constants.hpp"

namespace lppshock {

/// Reproducibility token: one stream per (master_seed, replica_index).
struct SeedPlan {
  std::uint64_t master_seed = 0;
  std::uint32_t replica_index = 0;

  friend bool operator==(const SeedPlan&, const SeedPlan&) = default;
};

/// Stream tags separate independent uses of the same (seed, replica) key.
enum class StreamTag : std::uint32_t {
  lpp_weights = 0,
  tasep_initial = 1,
  tasep_clocks = 2,
  bootstrap = 3,
  instance = 4,
};

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) {
  for (int r = 0; r < 10; ++r) {
    const std::uint64_t p0 = std::uint64_t{simd::kPhiloxM0} * c[0];
    const std::uint64_t p1 = std::uint64_t{simd::kPhiloxM1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += simd::kPhiloxW0;
    k[1] += simd::kPhiloxW1;
  }
  return c;
}

inline PhiloxKey key_of(std::uint64_t master_seed) {
  return {static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)};
}

/// Uniform in (0,1] from two 32-bit words, 52 random mantissa bits.
inline double uniform_open_closed(std::uint32_t r0, std::uint32_t r1) {
  const std::uint64_t x = (std::uint64_t{r0} << 32) | r1;
  const double m = std::bit_cast<double>((x >> 12) | simd::kOneBits);
  return 2.0 - m;
}

/// Natural log on (0,1]; same operation sequence as the AVX2 kernel.
inline double log_unit(double u) {
  const auto bits = std::bit_cast<std::uint64_t>(u);
  double e = static_cast<double>(static_cast<std::int64_t>((bits >> 52) & 0x7ff) - 1023);
  double m = std::bit_cast<double>((bits & simd::kMantissaMask) | simd::kOneBits);
  if (m > simd::kSqrt2) {
    m = m * 0.5;
    e = e + 1.0;
  }
  const double f = m - 1.0;
  const double s = f / (m + 1.0);
  const double z = s * s;
  double q = simd::kLogCoeff[0];
  for (int k = 1; k < simd::kLogTerms; ++k) q = std::fma(q, z, simd::kLogCoeff[k]);
  const double t = s + s;
  const double logm = std::fma(t * z, q, t);
  const double r = std::fma(e, simd::kLn2Lo, logm);
  return std::fma(e, simd::kLn2Hi, r);
}

/// Unit-mean exponential attached to lattice site (i, j) of a replica stream.
/// Sites (2a, d-2a) and (2a+1, d-2a-1) share one Philox block, one half each.
inline double unit_exponential(const SeedPlan& plan, StreamTag tag, std::int64_t i, std::int64_t j) {
  const std::int64_t d = i + j;
  const std::int64_t a = i >> 1;
  const PhiloxCounter c{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(d), plan.replica_index,
                        static_cast<std::uint32_t>(tag)};
  const auto r = philox4x32_10(c, key_of(plan.master_seed));
  const bool odd = (i & 1) != 0;
  return 0.0 - log_unit(uniform_open_closed(odd ? r[2] : r[0], odd ? r[3] : r[1]));
}

/// Sequential generator over a Philox counter; satisfies UniformRandomBitGenerator.
class PhiloxStream {
 public:
  using result_type = std::uint32_t;

  PhiloxStream(const SeedPlan& plan, StreamTag tag, std::uint32_t substream = 0)
      : key_(key_of(plan.master_seed)), replica_(plan.replica_index), tag_(static_cast<std::uint32_t>(tag)),
        substream_(substream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ == 4) refill();
    return block_[pos_++];
  }

  double uniform() {
    const std::uint32_t a = (*this)();
    const std::uint32_t b = (*this)();
    return uniform_open_closed(a, b);
  }

  double exponential(double rate) { return (0.0 - log_unit(uniform())) / rate; }

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t x = (std::uint64_t{(*this)()} << 32) | (*this)();
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * n) >> 64);
  }

 private:
  void refill() {
    block_ = philox4x32_10({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                            replica_, tag_ ^ (substream_ << 8)},
                           key_);
    ++counter_;
    pos_ = 0;
  }

  PhiloxKey key_;
  std::uint32_t replica_;
  std::uint32_t tag_;
  std::uint32_t substream_;
  std::uint64_t counter_ = 0;
  PhiloxCounter block_{};
  int pos_ = 4;
};

}  // namespace lppshock
