#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vtext/error.hpp"

namespace vtext {

// Single grayscale video frame, row-major 8-bit intensities.
struct Frame {
  std::size_t index = 0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Frame() = default;
  Frame(std::size_t idx, int w, int h, std::uint8_t fill = 0)
      : index(idx), width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return pixels.size(); }
};

// Interleaved 8-bit RGB image.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // r,g,b per pixel

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t* px(int x, int y) { return &data[(static_cast<std::size_t>(y) * width + x) * 3]; }
  const std::uint8_t* px(int x, int y) const {
    return &data[(static_cast<std::size_t>(y) * width + x) * 3];
  }
};

// Sobel gradient magnitude per pixel.
struct EdgeFrame {
  int width = 0;
  int height = 0;
  std::vector<float> magnitudes;

  float at(int x, int y) const { return magnitudes[static_cast<std::size_t>(y) * width + x]; }
};

// 1 = edge pixel, 0 = background.
struct BinaryEdgeFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryEdgeFrame() = default;
  BinaryEdgeFrame(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return bits[static_cast<std::size_t>(y) * width + x]; }
  std::size_t count() const;
};

inline std::size_t BinaryEdgeFrame::count() const {
  std::size_t n = 0;
  for (auto b : bits) n += b;
  return n;
}

template <class A, class B>
void require_same_size(const A& a, const B& b, const char* what) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.width) + "x" + std::to_string(a.height) +
                    " vs " + std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

}  // namespace vtext
