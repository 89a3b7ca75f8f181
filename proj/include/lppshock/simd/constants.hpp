#pragma once

#include <cstdint>

namespace lppshock::simd {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline constexpr std::uint64_t kOneBits = 0x3FF0000000000000ull;
inline constexpr std::uint64_t kMantissaMask = 0x000FFFFFFFFFFFFFull;
inline constexpr std::uint64_t kMagic52Bits = 0x4330000000000000ull;
inline constexpr double kTwo52 = 4503599627370496.0;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

// log(m) = 2s(1 + z Q(z)), s = (m-1)/(m+1), z = s^2; Q coefficients highest degree first
inline constexpr int kLogTerms = 10;
inline constexpr double kLogCoeff[kLogTerms] = {1.0 / 21, 1.0 / 19, 1.0 / 17, 1.0 / 15, 1.0 / 13,
                                               1.0 / 11, 1.0 / 9,  1.0 / 7,  1.0 / 5,  1.0 / 3};

}  // namespace lppshock::simd
