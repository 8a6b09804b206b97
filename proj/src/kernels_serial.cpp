#include "vtext/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace vtext::kernels::serial {

HistogramBins histogram(std::span<const std::uint8_t> pixels) {
  HistogramBins bins{};
  for (auto p : pixels) ++bins[p];
  return bins;
}

void sobel_magnitude(std::span<const std::uint8_t> pixels, int width, int height,
                     std::span<float> out) {
  auto px = [&](int x, int y) -> int {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return pixels[static_cast<std::size_t>(y) * width + x];
  };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int cx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                     (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      const int cy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                     (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
      out[static_cast<std::size_t>(y) * width + x] =
          static_cast<float>(std::sqrt(static_cast<double>(cx * cx + cy * cy)));
    }
  }
}

float max_value(std::span<const float> values) {
  float m = 0.0f;
  for (float v : values) m = std::max(m, v);
  return m;
}

void quantize(std::span<const float> values, float max, std::span<std::uint8_t> out) {
  if (max <= 0.0f) {
    std::fill(out.begin(), out.end(), std::uint8_t{0});
    return;
  }
  const double scale = 255.0 / max;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const long q = std::lround(values[i] * scale);
    out[i] = static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
  }
}

void threshold(std::span<const std::uint8_t> levels, int t, std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < levels.size(); ++i) out[i] = levels[i] > t ? 1 : 0;
}

void and_not(std::span<const std::uint8_t> prev, std::span<const std::uint8_t> next,
             std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < next.size(); ++i) out[i] = (next[i] && !prev[i]) ? 1 : 0;
}

}  // namespace vtext::kernels::serial
