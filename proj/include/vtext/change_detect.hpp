#pragma once

#include <cstddef>
#include <cstdint>

#include "vtext/image.hpp"
#include "vtext/kernels.hpp"

namespace vtext {

// 256-bin gray-level histogram of one frame.
struct Histogram {
  kernels::HistogramBins bins{};

  std::uint64_t mass() const;
};

struct ChangeDecision {
  std::size_t pair_index = 0;  // the pair is (pair_index, pair_index + 1)
  double d_h = 0.0;
  bool triggered = false;
};

Histogram gray_histogram(const Frame& frame);

// Sum of absolute bin differences normalised by the pixel count, in [0, 2].
double histogram_difference(const Histogram& a, const Histogram& b, std::uint64_t pixel_count);
double histogram_difference(const Frame& a, const Frame& b);

// Strict: d_h > theta.
inline bool detect_change(double d_h, double theta) { return d_h > theta; }

ChangeDecision decide_change(const Frame& a, const Frame& b, double theta);

}  // namespace vtext
