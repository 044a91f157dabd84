#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ieal/image.hpp"

namespace ieal::image_io {

struct PgmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Wrong magic or unparseable header fields.
struct PgmFormatError : PgmError {
  using PgmError::PgmError;
};
// Parsed fine but width != height; the cipher only handles square images.
struct PgmNotSquareError : PgmError {
  using PgmError::PgmError;
};
struct PgmMaxValueError : PgmError {
  using PgmError::PgmError;
};
struct PgmTruncatedError : PgmError {
  using PgmError::PgmError;
};

namespace detail {

// Reads the next header token, skipping whitespace and '#' comment lines.
inline std::string next_token(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(
             static_cast<unsigned char>(bytes[pos])) &&
         bytes[pos] != '#') {
    ++pos;
  }
  return bytes.substr(start, pos - start);
}

inline long parse_number(const std::string& token, const char* what) {
  if (token.empty()) {
    throw PgmFormatError(std::string("pgm: missing ") + what);
  }
  char* end = nullptr;
  const long v = std::strtol(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || v < 0) {
    throw PgmFormatError(std::string("pgm: bad ") + what + " '" + token +
                         "'");
  }
  return v;
}

}  // namespace detail

/// Parses binary P5 data. Header comments are skipped; the payload must hold
/// exactly width*height bytes after the single whitespace that ends the
/// header. Only square 8-bit images are accepted.
inline Image read_pgm(const std::string& bytes) {
  std::size_t pos = 0;
  const std::string magic = detail::next_token(bytes, pos);
  if (magic != "P5") {
    throw PgmFormatError("pgm: expected binary P5 magic, got '" + magic +
                         "'");
  }
  const long width = detail::parse_number(detail::next_token(bytes, pos),
                                          "width");
  const long height = detail::parse_number(detail::next_token(bytes, pos),
                                           "height");
  const long maxval = detail::parse_number(detail::next_token(bytes, pos),
                                           "max value");
  if (width < 1 || height < 1) {
    throw PgmFormatError("pgm: dimensions must be positive");
  }
  if (width != height) {
    throw PgmNotSquareError("pgm: image must be square, got " +
                            std::to_string(width) + "x" +
                            std::to_string(height));
  }
  if (maxval != 255) {
    throw PgmMaxValueError("pgm: max value must be 255, got " +
                           std::to_string(maxval));
  }
  if (pos >= bytes.size()) {
    throw PgmTruncatedError("pgm: missing payload");
  }
  ++pos;  // the single whitespace byte that terminates the header
  const std::size_t count =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - pos < count) {
    throw PgmTruncatedError("pgm: payload holds " +
                            std::to_string(bytes.size() - pos) + " of " +
                            std::to_string(count) + " bytes");
  }
  std::vector<std::uint8_t> pixels(count);
  for (std::size_t k = 0; k < count; ++k) {
    pixels[k] = static_cast<std::uint8_t>(bytes[pos + k]);
  }
  return Image(static_cast<int>(width), std::move(pixels));
}

inline std::string write_pgm(const Image& image) {
  std::ostringstream os;
  os << "P5\n# ieal\n" << image.size() << ' ' << image.size() << "\n255\n";
  std::string out = os.str();
  out.append(reinterpret_cast<const char*>(image.pixels().data()),
             image.pixel_count());
  return out;
}

inline Image load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PgmError("pgm: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_pgm(buf.str());
}

inline void save_image(const std::string& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw PgmError("pgm: cannot write '" + path + "'");
  }
  const std::string bytes = write_pgm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw PgmError("pgm: short write to '" + path + "'");
  }
}

struct Histogram {
  std::array<std::uint64_t, 256> counts{};
  bool operator==(const Histogram&) const = default;
};

inline Histogram histogram(const Image& image) {
  Histogram h;
  for (std::uint8_t px : image.pixels()) ++h.counts[px];
  return h;
}

/// Total variation between raster neighbors: sum of |difference| over all
/// horizontally and vertically adjacent pixel pairs. Low for natural images,
/// high for scrambled or masked ones; the default brute-force distinguisher.
inline std::uint64_t smoothness(const Image& image) {
  const int n = image.size();
  if (n < 2) {
    throw std::invalid_argument("smoothness: image must be at least 2x2");
  }
  const auto& px = image.pixels();
  std::uint64_t total = 0;
  for (int i = 0; i < n; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * n;
    for (int j = 0; j + 1 < n; ++j) {
      total += static_cast<std::uint64_t>(
          std::abs(int(px[row + j]) - int(px[row + j + 1])));
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      total += static_cast<std::uint64_t>(
          std::abs(int(px[row + j]) - int(px[row + n + j])));
    }
  }
  return total;
}

enum class FixtureKind { Zeros, Gradient, Checkerboard, Noise };

/// Deterministic synthetic images for tests. Noise uses the mt19937 output
/// stream directly (low byte of each draw), which the standard pins down
/// exactly, so fixtures are identical on every platform.
inline Image make_fixture(FixtureKind kind, int size,
                          std::uint32_t seed = 0) {
  if (size < 1) {
    throw std::invalid_argument("make_fixture: size must be >= 1");
  }
  Image img = Image::filled(size, 0);
  auto& px = img.pixels();
  switch (kind) {
    case FixtureKind::Zeros:
      break;
    case FixtureKind::Gradient:
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
          px[static_cast<std::size_t>(i) * size + j] =
              static_cast<std::uint8_t>((i + j) % 256);
        }
      }
      break;
    case FixtureKind::Checkerboard:
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
          px[static_cast<std::size_t>(i) * size + j] =
              (i + j) % 2 == 0 ? 0 : 255;
        }
      }
      break;
    case FixtureKind::Noise: {
      std::mt19937 rng(seed);
      for (auto& p : px) p = static_cast<std::uint8_t>(rng() & 0xFF);
      break;
    }
  }
  return img;
}

}  // namespace ieal::image_io
