#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace riglab {

// Philox4x32-10 counter-based generator: block(seed, hi, lo) is a pure
// function, so any (trial, draw) pair addresses its own random block and
// parallel schedules cannot change the stream.
inline std::array<std::uint32_t, 4> philox_block(std::uint64_t key, std::uint64_t ctr_hi,
                                                 std::uint64_t ctr_lo) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
  std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
  std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int r = 0; r < 10; ++r) {
    std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c0;
    std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c2;
    std::uint32_t h0 = static_cast<std::uint32_t>(p0 >> 32), l0 = static_cast<std::uint32_t>(p0);
    std::uint32_t h1 = static_cast<std::uint32_t>(p1 >> 32), l1 = static_cast<std::uint32_t>(p1);
    std::uint32_t n0 = h1 ^ c1 ^ k0;
    std::uint32_t n1 = l1;
    std::uint32_t n2 = h0 ^ c3 ^ k1;
    std::uint32_t n3 = l0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += W0;
    k1 += W1;
  }
  return {c0, c1, c2, c3};
}

inline std::uint64_t philox_u64(std::uint64_t key, std::uint64_t hi, std::uint64_t lo, int half) {
  auto b = philox_block(key, hi, lo);
  return half == 0 ? (static_cast<std::uint64_t>(b[0]) << 32 | b[1])
                   : (static_cast<std::uint64_t>(b[2]) << 32 | b[3]);
}

// Uniform in (0, 1).
inline double u64_to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Two standard normals from one counter block (Box-Muller).
inline std::pair<double, double> philox_normal_pair(std::uint64_t key, std::uint64_t hi,
                                                    std::uint64_t lo) {
  auto b = philox_block(key, hi, lo);
  double u1 = u64_to_unit(static_cast<std::uint64_t>(b[0]) << 32 | b[1]);
  double u2 = u64_to_unit(static_cast<std::uint64_t>(b[2]) << 32 | b[3]);
  double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

}  // namespace riglab
