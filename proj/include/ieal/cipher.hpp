#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ieal/image.hpp"
#include "ieal/lucas.hpp"

namespace ieal {

/// Secret key: T scrambling rounds, then masking from Lucas position S.
/// Both components are unbounded non-negative integers; reduction to the
/// canonical ranges [0, m) x [0, 384) lives in keyspace.hpp.
struct Key {
  std::uint64_t t = 0;
  std::uint64_t s = 0;
};

namespace detail {

// 2x2 matrix over Z_n, row-major. The Arnold round is the linear map
// (i, j) -> (i + j, i + 2j) mod n, i.e. multiplication by [[1,1],[1,2]].
struct Mat2 {
  std::int64_t a, b, c, d;
};

inline constexpr Mat2 kArnold{1, 1, 1, 2};

inline Mat2 mat_mul(const Mat2& x, const Mat2& y, std::int64_t n) {
  return {(x.a * y.a + x.b * y.c) % n, (x.a * y.b + x.b * y.d) % n,
          (x.c * y.a + x.d * y.c) % n, (x.c * y.b + x.d * y.d) % n};
}

inline Mat2 mat_identity(std::int64_t n) { return {1 % n, 0, 0, 1 % n}; }

inline Mat2 mat_pow(Mat2 base, std::uint64_t e, std::int64_t n) {
  Mat2 r = mat_identity(n);
  base = {base.a % n, base.b % n, base.c % n, base.d % n};
  while (e != 0) {
    if (e & 1) r = mat_mul(r, base, n);
    base = mat_mul(base, base, n);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// One Arnold round applied to a coordinate pair.
inline std::pair<int, int> arnold_step(std::pair<int, int> pos, int size) {
  const auto [i, j] = pos;
  if (size <= 0 || i < 0 || j < 0 || i >= size || j >= size) {
    throw std::invalid_argument("arnold_step: coordinates out of range");
  }
  const auto n = static_cast<std::int64_t>(size);
  return {static_cast<int>((i + static_cast<std::int64_t>(j)) % n),
          static_cast<int>((i + 2 * static_cast<std::int64_t>(j)) % n)};
}

/// Raster map of T Arnold rounds: entry p holds the raster index that the
/// pixel at raster position p moves to. Computed from the matrix power, so
/// the cost is O(N^2 + log T) for any T.
inline std::vector<std::uint32_t> arnold_map_table(int size,
                                                   std::uint64_t rounds) {
  if (size <= 0) {
    throw std::invalid_argument("arnold_map_table: size must be positive");
  }
  const auto n = static_cast<std::int64_t>(size);
  const detail::Mat2 m = detail::mat_pow(detail::kArnold, rounds, n);
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  std::size_t p = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j, ++p) {
      const std::int64_t di = (m.a * i + m.b * j) % n;
      const std::int64_t dj = (m.c * i + m.d * j) % n;
      table[p] = static_cast<std::uint32_t>(di * n + dj);
    }
  }
  return table;
}

/// T rounds of Arnold scrambling: output pixel at A_T(i, j) is the input
/// pixel at (i, j). A pure position permutation; pixel values are untouched.
inline Image scramble(const Image& image, std::uint64_t rounds) {
  const auto map = arnold_map_table(image.size(), rounds);
  std::vector<std::uint8_t> out(image.pixel_count());
  const auto& in = image.pixels();
  for (std::size_t p = 0; p < in.size(); ++p) {
    out[map[p]] = in[p];
  }
  return Image(image.size(), std::move(out));
}

/// Inverse of scramble: unscramble(scramble(I, T), T) == I for all I, T.
inline Image unscramble(const Image& image, std::uint64_t rounds) {
  const auto map = arnold_map_table(image.size(), rounds);
  std::vector<std::uint8_t> out(image.pixel_count());
  const auto& in = image.pixels();
  for (std::size_t p = 0; p < in.size(); ++p) {
    out[p] = in[map[p]];
  }
  return Image(image.size(), std::move(out));
}

/// XOR the pixel at raster index k with s(k) = L_{start+k} mod 256.
/// Self-inverse: applying it twice with the same start is the identity.
inline Image mask(const Image& image, std::uint64_t start) {
  std::vector<std::uint8_t> out = image.pixels();
  auto pos = static_cast<std::size_t>(start % kLucasPeriod);
  for (auto& px : out) {
    px = static_cast<std::uint8_t>(px ^ kLucasCycle[pos]);
    if (++pos == kLucasPeriod) pos = 0;
  }
  return Image(image.size(), std::move(out));
}

/// Full pipeline: T scrambling rounds, then keystream masking in raster order.
inline Image encrypt(const Image& image, const Key& key) {
  return mask(scramble(image, key.t), key.s);
}

/// Inverse pipeline: unmask first, then undo the scrambling.
inline Image decrypt(const Image& image, const Key& key) {
  return unscramble(mask(image, key.s), key.t);
}

}  // namespace ieal
