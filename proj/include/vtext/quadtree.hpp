#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vtext/geometry.hpp"
#include "vtext/image.hpp"

namespace vtext {

// Summed-area table of a binary edge frame: O(1) edge counts over any rect.
class DensityIndex {
 public:
  explicit DensityIndex(const BinaryEdgeFrame& frame);

  int width() const { return width_; }
  int height() const { return height_; }

  std::int64_t count(const Rect& r) const;
  double density(const Rect& r) const { return static_cast<double>(count(r)) / static_cast<double>(r.area()); }

 private:
  int width_;
  int height_;
  std::vector<std::int64_t> sums_;  // (width+1) x (height+1)
};

// Fraction of edge pixels in `rect`. Throws RectOutOfBounds.
double edge_density(const BinaryEdgeFrame& frame, const Rect& rect);

struct QuadBlock {
  Rect rect;
  double density = 0.0;
  int depth = 0;
  std::vector<QuadBlock> children;  // empty or exactly four: TL, TR, BL, BR

  bool terminal() const { return children.empty(); }
};

// Recursive density split. A block with density > threshold and both sides
// >= 2 * min_size splits into four quadrants (the first half takes the odd
// pixel); every other block is terminal.
QuadBlock split(const DensityIndex& index, double threshold, int min_size);
QuadBlock split(const BinaryEdgeFrame& frame, double threshold, int min_size);

// Terminal blocks in depth-first TL, TR, BL, BR order (children stripped).
std::vector<QuadBlock> collect_leaves(const QuadBlock& root);

struct CandidateRegion {
  Rect bbox;
  std::vector<Rect> member_blocks;
  double mean_density = 0.0;
  std::size_t pair_index = 0;
};

// Connected components over leaves with density >= density_floor, joining
// edge-adjacent leaves whose densities differ by at most density_tol.
// Regions come back sorted by bbox (y, x, h, w).
std::vector<CandidateRegion> merge(std::span<const QuadBlock> leaves, double density_tol,
                                   double density_floor, std::size_t pair_index = 0);

// Shrinks every member block to the bounding box of its edge pixels, drops
// members without edges, and recomputes bbox and mean_density. Empty result
// when no member holds an edge pixel.
std::optional<CandidateRegion> tighten(const CandidateRegion& region, const BinaryEdgeFrame& frame,
                                       const DensityIndex& index);

// Joins regions lying on one text line: vertical overlap of at least half the
// shorter height, heights within a factor of two, and a horizontal gap no
// larger than gap_factor times the taller height. gap_factor <= 0 disables.
std::vector<CandidateRegion> group_lines(std::vector<CandidateRegion> regions, double gap_factor,
                                         const DensityIndex& index);

// Gray-level crop of a frame under a rect.
struct Crop {
  Rect rect;
  std::vector<std::uint8_t> pixels;
};

Crop crop(const Frame& frame, const Rect& rect);

struct MappedRegion {
  CandidateRegion region;
  Crop crop;
};

// Attaches the pixels of `original` (frame i+1 of the pair) under region.bbox.
MappedRegion map_to_frame(const CandidateRegion& region, const Frame& original);

}  // namespace vtext
