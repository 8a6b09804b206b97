#pragma once

#include <cstddef>
#include <vector>

#include "vtext/edgemap.hpp"
#include "vtext/quadtree.hpp"

namespace vtext {

struct LocalizeConfig {
  double split_threshold = 0.005;  // T: split while density > T
  int min_block = 8;              // quadrant floor in pixels
  double density_tol = 0.25;      // merge: max density gap between neighbours
  double density_floor = 0.05;    // merge: leaves below this never join a region
  double line_gap = 1.5;          // line grouping gap, in units of text height; 0 disables
};

// Everything derived from one (reference, target) binary edge pair.
struct LocalizedPair {
  BinaryEdgeFrame difference;
  DensityIndex index;
  QuadBlock root;
  std::vector<CandidateRegion> candidates;
};

// edge difference -> split -> merge -> tighten -> line grouping.
LocalizedPair localize(const BinaryEdgeFrame& prev, const BinaryEdgeFrame& next, const LocalizeConfig& cfg,
                       std::size_t pair_index);

}  // namespace vtext
