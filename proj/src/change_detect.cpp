#include "vtext/change_detect.hpp"

#include <numeric>

namespace vtext {

std::uint64_t Histogram::mass() const {
  return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

Histogram gray_histogram(const Frame& frame) { return Histogram{kernels::histogram(frame.pixels)}; }

double histogram_difference(const Histogram& a, const Histogram& b, std::uint64_t pixel_count) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < a.bins.size(); ++k) {
    total += a.bins[k] > b.bins[k] ? a.bins[k] - b.bins[k] : b.bins[k] - a.bins[k];
  }
  return pixel_count == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(pixel_count);
}

double histogram_difference(const Frame& a, const Frame& b) {
  require_same_size(a, b, "histogram_difference");
  return histogram_difference(gray_histogram(a), gray_histogram(b), a.size());
}

ChangeDecision decide_change(const Frame& a, const Frame& b, double theta) {
  ChangeDecision d;
  d.pair_index = a.index;
  d.d_h = histogram_difference(a, b);
  d.triggered = detect_change(d.d_h, theta);
  return d;
}

}  // namespace vtext
