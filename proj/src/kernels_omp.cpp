#include "vtext/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace vtext::kernels {

namespace {

inline float magnitude(int cx, int cy) {
  return static_cast<float>(std::sqrt(static_cast<double>(cx * cx + cy * cy)));
}

}  // namespace

HistogramBins histogram(std::span<const std::uint8_t> pixels) {
  HistogramBins bins{};
  const auto n = static_cast<std::ptrdiff_t>(pixels.size());
  const std::uint8_t* p = pixels.data();
#pragma omp parallel
  {
    HistogramBins local{};
#pragma omp for nowait schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) ++local[p[i]];
#pragma omp critical(vtext_histogram)
    for (std::size_t k = 0; k < bins.size(); ++k) bins[k] += local[k];
  }
  return bins;
}

void sobel_magnitude(std::span<const std::uint8_t> pixels, int width, int height,
                     std::span<float> out) {
  const std::uint8_t* src = pixels.data();
  float* dst = out.data();
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    const std::uint8_t* up = src + static_cast<std::size_t>(std::max(y - 1, 0)) * width;
    const std::uint8_t* mid = src + static_cast<std::size_t>(y) * width;
    const std::uint8_t* down = src + static_cast<std::size_t>(std::min(y + 1, height - 1)) * width;
    float* row = dst + static_cast<std::size_t>(y) * width;

    auto at = [&](int x) {
      const int l = std::max(x - 1, 0);
      const int r = std::min(x + 1, width - 1);
      const int cx = (up[r] + 2 * mid[r] + down[r]) - (up[l] + 2 * mid[l] + down[l]);
      const int cy = (down[l] + 2 * down[x] + down[r]) - (up[l] + 2 * up[x] + up[r]);
      row[x] = magnitude(cx, cy);
    };

    at(0);
    for (int x = 1; x < width - 1; ++x) {
      const int cx = (up[x + 1] + 2 * mid[x + 1] + down[x + 1]) - (up[x - 1] + 2 * mid[x - 1] + down[x - 1]);
      const int cy = (down[x - 1] + 2 * down[x] + down[x + 1]) - (up[x - 1] + 2 * up[x] + up[x + 1]);
      row[x] = magnitude(cx, cy);
    }
    if (width > 1) at(width - 1);
  }
}

float max_value(std::span<const float> values) {
  float m = 0.0f;
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  const float* v = values.data();
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, v[i]);
  return m;
}

void quantize(std::span<const float> values, float max, std::span<std::uint8_t> out) {
  if (max <= 0.0f) {
    std::fill(out.begin(), out.end(), std::uint8_t{0});
    return;
  }
  const double scale = 255.0 / max;
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const long q = std::lround(values[i] * scale);
    out[i] = static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
  }
}

void threshold(std::span<const std::uint8_t> levels, int t, std::span<std::uint8_t> out) {
  const auto n = static_cast<std::ptrdiff_t>(levels.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = levels[i] > t ? 1 : 0;
}

void and_not(std::span<const std::uint8_t> prev, std::span<const std::uint8_t> next,
             std::span<std::uint8_t> out) {
  const auto n = static_cast<std::ptrdiff_t>(next.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = (next[i] && !prev[i]) ? 1 : 0;
}

void set_worker_count(int workers) { omp_set_num_threads(std::max(workers, 1)); }

int worker_count() { return omp_get_max_threads(); }

}  // namespace vtext::kernels
