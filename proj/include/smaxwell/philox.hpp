#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11) and a stateless
// standard normal draw keyed by (seed, stream, counter words).

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace smaxwell {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

namespace detail {

inline void philox_round(PhiloxCounter& ctr, const PhiloxKey& key) {
  constexpr std::uint64_t m0 = 0xD2511F53u;
  constexpr std::uint64_t m1 = 0xCD9E8D57u;
  const std::uint64_t p0 = m0 * ctr[0];
  const std::uint64_t p1 = m1 * ctr[2];
  ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1), std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
         std::uint32_t(p0)};
}

}  // namespace detail

inline PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t w0 = 0x9E3779B9u;
  constexpr std::uint32_t w1 = 0xBB67AE85u;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += w0;
      key[1] += w1;
    }
    detail::philox_round(ctr, key);
  }
  return ctr;
}

/// Independent streams drawn from one user seed.
enum class RandomStream : std::uint32_t { wiener = 0x57u, initial_data = 0x1du, test = 0x7eu };

/// One standard normal variate, a pure function of its arguments (Box-Muller on one Philox block).
inline double counter_normal(std::uint64_t seed, RandomStream stream, std::uint32_t c0, std::uint32_t c1,
                             std::uint32_t c2, std::uint32_t c3) {
  const PhiloxKey key{std::uint32_t(seed), std::uint32_t(seed >> 32) ^ (std::uint32_t(stream) << 24)};
  const auto out = philox4x32({c0, c1, c2, c3}, key);
  const std::uint64_t a = (std::uint64_t(out[0]) << 32) | out[1];
  const std::uint64_t b = (std::uint64_t(out[2]) << 32) | out[3];
  const double u1 = double((a >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = double(b >> 11) * 0x1.0p-53;        // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Uniform [0, 1) variate from the same counter scheme.
inline double counter_uniform(std::uint64_t seed, RandomStream stream, std::uint32_t c0, std::uint32_t c1,
                              std::uint32_t c2, std::uint32_t c3) {
  const PhiloxKey key{std::uint32_t(seed), std::uint32_t(seed >> 32) ^ (std::uint32_t(stream) << 24)};
  const auto out = philox4x32({c0, c1, c2, c3}, key);
  const std::uint64_t a = (std::uint64_t(out[0]) << 32) | out[1];
  return double(a >> 11) * 0x1.0p-53;
}

}  // namespace smaxwell
