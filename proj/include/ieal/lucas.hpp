#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ieal {

/// The Lucas sequence reduced modulo 256 repeats after exactly this many
/// entries, so every keystream is a rotation of one fixed 384-byte cycle.
inline constexpr int kLucasPeriod = 384;

namespace detail {

constexpr std::array<std::uint8_t, kLucasPeriod> make_lucas_cycle() {
  std::array<std::uint8_t, kLucasPeriod> table{};
  table[0] = 2;  // L_0
  table[1] = 1;  // L_1
  for (int k = 2; k < kLucasPeriod; ++k) {
    table[k] = static_cast<std::uint8_t>((table[k - 1] + table[k - 2]) & 0xFF);
  }
  return table;
}

}  // namespace detail

/// L_k mod 256 for k = 0..383.
inline constexpr std::array<std::uint8_t, kLucasPeriod> kLucasCycle =
    detail::make_lucas_cycle();

// The recurrence wraps around the table boundary, i.e. 384 really is a period.
static_assert(kLucasCycle[0] == 2 && kLucasCycle[1] == 1);
static_assert((kLucasCycle[383] + kLucasCycle[382]) % 256 == kLucasCycle[0]);
static_assert((kLucasCycle[0] + kLucasCycle[383]) % 256 == kLucasCycle[1]);

/// Masking bytes s(k) = L_{start+k} mod 256 for k = 0..length-1.
inline std::vector<std::uint8_t> keystream(std::uint64_t start,
                                           std::size_t length) {
  std::vector<std::uint8_t> out(length);
  auto pos = static_cast<std::size_t>(start % kLucasPeriod);
  for (std::size_t k = 0; k < length; ++k) {
    out[k] = kLucasCycle[pos];
    if (++pos == kLucasPeriod) pos = 0;
  }
  return out;
}

}  // namespace ieal
