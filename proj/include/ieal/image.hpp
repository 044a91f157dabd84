#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ieal {

/// Square 8-bit grayscale image. Pixels are stored in raster (row-major)
/// order: the pixel at (row i, column j) lives at index i*N + j.
class Image {
 public:
  Image(int size, std::vector<std::uint8_t> pixels)
      : size_(size), pixels_(std::move(pixels)) {
    if (size_ <= 0) {
      throw std::invalid_argument("Image: size must be positive");
    }
    const auto expected =
        static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_);
    if (pixels_.size() != expected) {
      throw std::invalid_argument(
          "Image: got " + std::to_string(pixels_.size()) + " pixels, want " +
          std::to_string(size_) + "x" + std::to_string(size_));
    }
  }

  static Image filled(int size, std::uint8_t value) {
    if (size <= 0) {
      throw std::invalid_argument("Image: size must be positive");
    }
    const auto count =
        static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
    return Image(size, std::vector<std::uint8_t>(count, value));
  }

  int size() const noexcept { return size_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  std::uint8_t operator()(int i, int j) const { return pixels_[index(i, j)]; }
  std::uint8_t& operator()(int i, int j) { return pixels_[index(i, j)]; }

  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }
  std::vector<std::uint8_t>& pixels() noexcept { return pixels_; }

  bool operator==(const Image&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(size_) +
           static_cast<std::size_t>(j);
  }

  int size_;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace ieal
