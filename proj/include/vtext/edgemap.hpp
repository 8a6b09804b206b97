#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vtext/image.hpp"
#include "vtext/kernels.hpp"

namespace vtext {

// Sobel magnitude sqrt(Cx^2 + Cy^2) with replicate padding. Throws
// FrameTooSmall below 3x3.
EdgeFrame sobel_edge_map(const Frame& frame);

// Linear rescale of [0, max magnitude] onto gray levels 0..255.
std::vector<std::uint8_t> quantize_magnitudes(const EdgeFrame& edge);

// Otsu threshold: the level t maximising between-class variance of the split
// {<= t} / {> t}, compared exactly. Ties go to the smallest t. Only splits with
// both classes non-empty compete; a histogram occupying a single level returns
// that level (0 for an empty histogram).
int optimal_threshold(const kernels::HistogramBins& histogram);
int optimal_threshold(std::span<const std::uint8_t> levels);

// bit = quantized magnitude > t
BinaryEdgeFrame binarize(const EdgeFrame& edge, int t);
BinaryEdgeFrame binarize_levels(std::span<const std::uint8_t> levels, int width, int height, int t);

// Edges present in `next` but not in `prev`.
BinaryEdgeFrame edge_difference(const BinaryEdgeFrame& prev, const BinaryEdgeFrame& next);

// Intermediate products of one frame's edge mapping; kept for debug dumps.
struct EdgeMapping {
  EdgeFrame magnitude;
  std::vector<std::uint8_t> levels;
  int threshold = 0;
  BinaryEdgeFrame binary;
};

EdgeMapping map_edges(const Frame& frame);

}  // namespace vtext
