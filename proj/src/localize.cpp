#include "vtext/localize.hpp"

namespace vtext {

LocalizedPair localize(const BinaryEdgeFrame& prev, const BinaryEdgeFrame& next, const LocalizeConfig& cfg,
                       std::size_t pair_index) {
  BinaryEdgeFrame diff = edge_difference(prev, next);
  DensityIndex index(diff);
  QuadBlock root = split(index, cfg.split_threshold, cfg.min_block);
  const auto leaves = collect_leaves(root);

  std::vector<CandidateRegion> regions;
  for (const auto& r : merge(leaves, cfg.density_tol, cfg.density_floor, pair_index)) {
    if (auto t = tighten(r, diff, index)) regions.push_back(std::move(*t));
  }
  regions = group_lines(std::move(regions), cfg.line_gap, index);

  return LocalizedPair{std::move(diff), std::move(index), std::move(root), std::move(regions)};
}

}  // namespace vtext
