// Compiled with -mavx2 -mfma; reached only through runtime dispatch.
#include <immintrin.h>

#include <algorithm>
#include <cstring>

#include "lppshock/simd/constants.hpp"
#include "lppshock/simd/kernels.hpp"

namespace lppshock::simd::detail {
namespace {

struct Lanes8 {
  __m256i lo;
  __m256i hi;
};

inline Lanes8 mulhilo(__m256i m, __m256i c) {
  const __m256i even = _mm256_mul_epu32(m, c);
  const __m256i odd = _mm256_mul_epu32(m, _mm256_srli_epi64(c, 32));
  return {_mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA),
          _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA)};
}

// log on (0,1], lane-wise identical to the scalar log_unit
inline __m256d log_unit4(__m256d u) {
  const __m256i bits = _mm256_castpd_si256(u);
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  const __m256d magic = _mm256_castsi256_pd(_mm256_set1_epi64x(static_cast<long long>(kMagic52Bits)));
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(magic))), magic);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(static_cast<long long>(kMantissaMask))),
                      _mm256_set1_epi64x(static_cast<long long>(kOneBits))));
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_sub_pd(m, one);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);
  __m256d q = _mm256_set1_pd(kLogCoeff[0]);
  for (int k = 1; k < kLogTerms; ++k) q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(kLogCoeff[k]));
  const __m256d t = _mm256_add_pd(s, s);
  const __m256d logm = _mm256_fmadd_pd(_mm256_mul_pd(t, z), q, t);
  const __m256d r = _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Lo), logm);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Hi), r);
}

inline __m256d exp_from_word64(__m256i x) {
  const __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_srli_epi64(x, 12), _mm256_set1_epi64x(static_cast<long long>(kOneBits))));
  const __m256d u = _mm256_sub_pd(_mm256_set1_pd(2.0), m);
  return _mm256_sub_pd(_mm256_setzero_pd(), log_unit4(u));
}

inline void store_pairs(__m256d e0, __m256d e1, double* out) {
  // e0/e1 hold even/odd sites of lanes {0,1 | 4,5} or {2,3 | 6,7}
  const __m256d lo = _mm256_unpacklo_pd(e0, e1);
  const __m256d hi = _mm256_unpackhi_pd(e0, e1);
  _mm256_storeu_pd(out, _mm256_permute2f128_pd(lo, hi, 0x20));
  _mm256_storeu_pd(out + 8, _mm256_permute2f128_pd(lo, hi, 0x31));
}

// B independent batches of eight pair counters (sixteen sites each), interleaved for ILP
template <int B>
inline void philox_pairs(const __m256i* ca, __m256i cd, __m256i crep, __m256i ctag, std::uint32_t k0,
                         std::uint32_t k1, double* out) {
  const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kPhiloxM1));
  __m256i c0[B], c1[B], c2[B], c3[B];
  for (int b = 0; b < B; ++b) {
    c0[b] = ca[b];
    c1[b] = cd;
    c2[b] = crep;
    c3[b] = ctag;
  }
  for (int r = 0; r < 10; ++r) {
    const __m256i kk0 = _mm256_set1_epi32(static_cast<int>(k0));
    const __m256i kk1 = _mm256_set1_epi32(static_cast<int>(k1));
    for (int b = 0; b < B; ++b) {
      const Lanes8 p0 = mulhilo(m0, c0[b]);
      const Lanes8 p1 = mulhilo(m1, c2[b]);
      c0[b] = _mm256_xor_si256(_mm256_xor_si256(p1.hi, c1[b]), kk0);
      c2[b] = _mm256_xor_si256(_mm256_xor_si256(p0.hi, c3[b]), kk1);
      c1[b] = p1.lo;
      c3[b] = p0.lo;
    }
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  for (int b = 0; b < B; ++b) {
    double* o = out + 16 * b;
    // 64-bit words (r0 << 32) | r1 and (r2 << 32) | r3
    store_pairs(exp_from_word64(_mm256_unpacklo_epi32(c1[b], c0[b])),
                exp_from_word64(_mm256_unpacklo_epi32(c3[b], c2[b])), o);
    store_pairs(exp_from_word64(_mm256_unpackhi_epi32(c1[b], c0[b])),
                exp_from_word64(_mm256_unpackhi_epi32(c3[b], c2[b])), o + 4);
  }
}

}  // namespace

void exp_fill_avx2(const DiagonalRun& run, std::size_t npairs, double* out) {
  const auto k0 = static_cast<std::uint32_t>(run.master_seed);
  const auto k1 = static_cast<std::uint32_t>(run.master_seed >> 32);
  __m256i ca = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(run.a0))),
                                _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
  const __m256i step = _mm256_set1_epi32(8);
  const __m256i cd = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(run.d)));
  const __m256i crep = _mm256_set1_epi32(static_cast<int>(run.replica));
  const __m256i ctag = _mm256_set1_epi32(static_cast<int>(run.tag));
  constexpr int kBatches = 2;
  std::size_t k = 0;
  for (; k + 8 * kBatches <= npairs; k += 8 * kBatches) {
    __m256i ba[kBatches];
    for (int b = 0; b < kBatches; ++b) {
      ba[b] = ca;
      ca = _mm256_add_epi32(ca, step);
    }
    philox_pairs<kBatches>(ba, cd, crep, ctag, k0, k1, out + 2 * k);
  }
  for (; k < npairs; k += 8) {
    alignas(32) double tmp[16];
    philox_pairs<1>(&ca, cd, crep, ctag, k0, k1, tmp);
    std::memcpy(out + 2 * k, tmp, 2 * std::min<std::size_t>(8, npairs - k) * sizeof(double));
    ca = _mm256_add_epi32(ca, step);
  }
}

void maxplus_avx2(const double* left, const double* down, const double* w, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d l = _mm256_loadu_pd(left + k);
    const __m256d d = _mm256_loadu_pd(down + k);
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_max_pd(d, l), _mm256_loadu_pd(w + k)));
  }
  for (; k < n; ++k) out[k] = (left[k] < down[k] ? down[k] : left[k]) + w[k];
}

void maxplus_arg_avx2(const double* left, const double* down, const double* w, double* out,
                      std::uint8_t* from_left, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d l = _mm256_loadu_pd(left + k);
    const __m256d d = _mm256_loadu_pd(down + k);
    const __m256d ge = _mm256_cmp_pd(l, d, _CMP_GE_OQ);
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_blendv_pd(d, l, ge), _mm256_loadu_pd(w + k)));
    const int mask = _mm256_movemask_pd(ge);
    from_left[k] = mask & 1;
    from_left[k + 1] = (mask >> 1) & 1;
    from_left[k + 2] = (mask >> 2) & 1;
    from_left[k + 3] = (mask >> 3) & 1;
  }
  for (; k < n; ++k) {
    const bool l = left[k] >= down[k];
    from_left[k] = l ? 1 : 0;
    out[k] = (l ? left[k] : down[k]) + w[k];
  }
}

}  // namespace lppshock::simd::detail
