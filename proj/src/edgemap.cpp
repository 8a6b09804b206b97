#include "vtext/edgemap.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace vtext {

namespace {

using Wide = boost::multiprecision::int256_t;

}  // namespace

EdgeFrame sobel_edge_map(const Frame& frame) {
  if (frame.width < 3 || frame.height < 3) {
    throw Error(ErrorCode::FrameTooSmall,
                std::to_string(frame.width) + "x" + std::to_string(frame.height) + " is below 3x3");
  }
  EdgeFrame e{frame.width, frame.height, std::vector<float>(frame.size())};
  kernels::sobel_magnitude(frame.pixels, frame.width, frame.height, e.magnitudes);
  return e;
}

std::vector<std::uint8_t> quantize_magnitudes(const EdgeFrame& edge) {
  std::vector<std::uint8_t> levels(edge.magnitudes.size());
  kernels::quantize(edge.magnitudes, kernels::max_value(edge.magnitudes), levels);
  return levels;
}

int optimal_threshold(const kernels::HistogramBins& histogram) {
  // With n0/s0 the count/sum of the low class and N/S the totals, the
  // between-class variance is (S*n0 - N*s0)^2 / (N^2 * n0 * (N - n0)); the
  // N^2 factor is common, so candidates compare as exact fractions.
  Wide total_n = 0;
  Wide total_s = 0;
  int lowest = -1;
  for (int k = 0; k < 256; ++k) {
    if (histogram[k] == 0) continue;
    if (lowest < 0) lowest = k;
    total_n += histogram[k];
    total_s += Wide(histogram[k]) * k;
  }
  if (lowest < 0) return 0;

  Wide n0 = 0;
  Wide s0 = 0;
  Wide best_num = -1;
  Wide best_den = 1;
  int best_t = -1;
  for (int t = 0; t < 255; ++t) {
    n0 += histogram[t];
    s0 += Wide(histogram[t]) * t;
    const Wide n1 = total_n - n0;
    if (n0 == 0 || n1 == 0) continue;
    const Wide diff = total_s * n0 - total_n * s0;
    const Wide num = diff * diff;
    const Wide den = n0 * n1;
    if (best_t < 0 || num * best_den > best_num * den) {
      best_num = num;
      best_den = den;
      best_t = t;
    }
  }
  return best_t < 0 ? lowest : best_t;
}

int optimal_threshold(std::span<const std::uint8_t> levels) {
  return optimal_threshold(kernels::histogram(levels));
}

BinaryEdgeFrame binarize_levels(std::span<const std::uint8_t> levels, int width, int height, int t) {
  BinaryEdgeFrame b(width, height);
  kernels::threshold(levels, t, b.bits);
  return b;
}

BinaryEdgeFrame binarize(const EdgeFrame& edge, int t) {
  const auto levels = quantize_magnitudes(edge);
  return binarize_levels(levels, edge.width, edge.height, t);
}

BinaryEdgeFrame edge_difference(const BinaryEdgeFrame& prev, const BinaryEdgeFrame& next) {
  require_same_size(prev, next, "edge_difference");
  BinaryEdgeFrame d(next.width, next.height);
  kernels::and_not(prev.bits, next.bits, d.bits);
  return d;
}

EdgeMapping map_edges(const Frame& frame) {
  EdgeMapping m;
  m.magnitude = sobel_edge_map(frame);
  m.levels = quantize_magnitudes(m.magnitude);
  m.threshold = optimal_threshold(m.levels);
  m.binary = binarize_levels(m.levels, frame.width, frame.height, m.threshold);
  return m;
}

}  // namespace vtext
