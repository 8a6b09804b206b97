#include "vtext/quadtree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace vtext {

namespace {

std::string describe(const Rect& r) {
  return "(" + std::to_string(r.x) + "," + std::to_string(r.y) + " " + std::to_string(r.w) + "x" +
         std::to_string(r.h) + ")";
}

void require_inside(const Rect& r, int width, int height) {
  if (!r.inside(width, height)) {
    throw Error(ErrorCode::RectOutOfBounds,
                describe(r) + " outside " + std::to_string(width) + "x" + std::to_string(height));
  }
}

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void split_into(QuadBlock& block, const DensityIndex& index, double threshold, int min_size) {
  const Rect& r = block.rect;
  if (!(block.density > threshold) || r.w < 2 * min_size || r.h < 2 * min_size) return;
  const int w0 = (r.w + 1) / 2;
  const int h0 = (r.h + 1) / 2;
  const Rect quads[4] = {
      {r.x, r.y, w0, h0},
      {r.x + w0, r.y, r.w - w0, h0},
      {r.x, r.y + h0, w0, r.h - h0},
      {r.x + w0, r.y + h0, r.w - w0, r.h - h0},
  };
  block.children.reserve(4);
  for (const Rect& q : quads) {
    QuadBlock child{q, index.density(q), block.depth + 1, {}};
    split_into(child, index, threshold, min_size);
    block.children.push_back(std::move(child));
  }
}

void collect(const QuadBlock& b, std::vector<QuadBlock>& out) {
  if (b.terminal()) {
    out.push_back(QuadBlock{b.rect, b.density, b.depth, {}});
    return;
  }
  for (const auto& c : b.children) collect(c, out);
}

Rect bbox_of(std::span<const Rect> rects) {
  Rect box = rects.front();
  for (const Rect& r : rects) box = bounding_union(box, r);
  return box;
}

double union_density(std::span<const Rect> rects, const DensityIndex& index) {
  std::int64_t bits = 0;
  std::int64_t area = 0;
  for (const Rect& r : rects) {
    bits += index.count(r);
    area += r.area();
  }
  return area == 0 ? 0.0 : static_cast<double>(bits) / static_cast<double>(area);
}

bool region_order(const CandidateRegion& a, const CandidateRegion& b) {
  return std::tie(a.bbox.y, a.bbox.x, a.bbox.h, a.bbox.w) < std::tie(b.bbox.y, b.bbox.x, b.bbox.h, b.bbox.w);
}

}  // namespace

DensityIndex::DensityIndex(const BinaryEdgeFrame& frame)
    : width_(frame.width),
      height_(frame.height),
      sums_(static_cast<std::size_t>(frame.width + 1) * (frame.height + 1), 0) {
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  for (int y = 0; y < height_; ++y) {
    std::int64_t row = 0;
    const std::uint8_t* bits = &frame.bits[static_cast<std::size_t>(y) * width_];
    std::int64_t* above = &sums_[static_cast<std::size_t>(y) * stride];
    std::int64_t* cur = above + stride;
    for (int x = 0; x < width_; ++x) {
      row += bits[x];
      cur[x + 1] = above[x + 1] + row;
    }
  }
}

std::int64_t DensityIndex::count(const Rect& r) const {
  require_inside(r, width_, height_);
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  auto s = [&](int x, int y) { return sums_[static_cast<std::size_t>(y) * stride + x]; };
  return s(r.right(), r.bottom()) - s(r.x, r.bottom()) - s(r.right(), r.y) + s(r.x, r.y);
}

double edge_density(const BinaryEdgeFrame& frame, const Rect& rect) {
  require_inside(rect, frame.width, frame.height);
  std::int64_t n = 0;
  for (int y = rect.y; y < rect.bottom(); ++y) {
    for (int x = rect.x; x < rect.right(); ++x) n += frame.at(x, y);
  }
  return static_cast<double>(n) / static_cast<double>(rect.area());
}

QuadBlock split(const DensityIndex& index, double threshold, int min_size) {
  const Rect whole{0, 0, index.width(), index.height()};
  QuadBlock root{whole, index.density(whole), 0, {}};
  split_into(root, index, threshold, std::max(min_size, 1));
  return root;
}

QuadBlock split(const BinaryEdgeFrame& frame, double threshold, int min_size) {
  return split(DensityIndex(frame), threshold, min_size);
}

std::vector<QuadBlock> collect_leaves(const QuadBlock& root) {
  std::vector<QuadBlock> out;
  collect(root, out);
  return out;
}

std::vector<CandidateRegion> merge(std::span<const QuadBlock> leaves, double density_tol,
                                   double density_floor, std::size_t pair_index) {
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i].density >= density_floor) nodes.push_back(i);
  }
  // Sorting by x lets the inner loop stop once a leaf starts right of the
  // current one's right edge.
  std::sort(nodes.begin(), nodes.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(leaves[a].rect.x, a) < std::tie(leaves[b].rect.x, b);
  });

  DisjointSet sets(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const QuadBlock& la = leaves[nodes[a]];
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const QuadBlock& lb = leaves[nodes[b]];
      if (lb.rect.x > la.rect.right()) break;
      if (std::abs(la.density - lb.density) <= density_tol && edge_adjacent(la.rect, lb.rect)) {
        sets.unite(a, b);
      }
    }
  }

  std::vector<std::vector<std::size_t>> groups(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) groups[sets.find(a)].push_back(nodes[a]);

  std::vector<CandidateRegion> regions;
  for (auto& g : groups) {
    if (g.empty()) continue;
    std::sort(g.begin(), g.end());
    CandidateRegion region;
    region.pair_index = pair_index;
    double weighted = 0.0;
    std::int64_t area = 0;
    for (std::size_t i : g) {
      region.member_blocks.push_back(leaves[i].rect);
      weighted += leaves[i].density * static_cast<double>(leaves[i].rect.area());
      area += leaves[i].rect.area();
    }
    region.bbox = bbox_of(region.member_blocks);
    region.mean_density = weighted / static_cast<double>(area);
    regions.push_back(std::move(region));
  }
  std::sort(regions.begin(), regions.end(), region_order);
  return regions;
}

std::optional<CandidateRegion> tighten(const CandidateRegion& region, const BinaryEdgeFrame& frame,
                                       const DensityIndex& index) {
  CandidateRegion out;
  out.pair_index = region.pair_index;
  for (const Rect& m : region.member_blocks) {
    require_inside(m, frame.width, frame.height);
    int x0 = m.right(), y0 = m.bottom(), x1 = m.x - 1, y1 = m.y - 1;
    for (int y = m.y; y < m.bottom(); ++y) {
      const std::uint8_t* row = &frame.bits[static_cast<std::size_t>(y) * frame.width];
      for (int x = m.x; x < m.right(); ++x) {
        if (!row[x]) continue;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
    if (x1 < x0) continue;
    out.member_blocks.push_back({x0, y0, x1 - x0 + 1, y1 - y0 + 1});
  }
  if (out.member_blocks.empty()) return std::nullopt;
  out.bbox = bbox_of(out.member_blocks);
  out.mean_density = union_density(out.member_blocks, index);
  return out;
}

std::vector<CandidateRegion> group_lines(std::vector<CandidateRegion> regions, double gap_factor,
                                         const DensityIndex& index) {
  if (gap_factor <= 0.0 || regions.size() < 2) return regions;

  auto same_line = [&](const Rect& a, const Rect& b) {
    const int overlap = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
    const int shorter = std::min(a.h, b.h);
    const int taller = std::max(a.h, b.h);
    if (2 * overlap < shorter || taller > 2 * shorter) return false;
    const int gap = std::max(a.x, b.x) - std::min(a.right(), b.right());
    return gap <= gap_factor * taller;
  };

  // Repeat until stable: a joined line can reach regions neither part reached.
  bool changed = true;
  while (changed) {
    changed = false;
    DisjointSet sets(regions.size());
    for (std::size_t a = 0; a < regions.size(); ++a) {
      for (std::size_t b = a + 1; b < regions.size(); ++b) {
        if (same_line(regions[a].bbox, regions[b].bbox)) {
          sets.unite(a, b);
          changed = true;
        }
      }
    }
    if (!changed) break;

    std::vector<CandidateRegion> grouped;
    std::vector<std::ptrdiff_t> slot(regions.size(), -1);
    for (std::size_t a = 0; a < regions.size(); ++a) {
      const std::size_t root = sets.find(a);
      if (slot[root] < 0) {
        slot[root] = static_cast<std::ptrdiff_t>(grouped.size());
        grouped.push_back(std::move(regions[a]));
      } else {
        auto& g = grouped[static_cast<std::size_t>(slot[root])];
        g.member_blocks.insert(g.member_blocks.end(), regions[a].member_blocks.begin(),
                               regions[a].member_blocks.end());
      }
    }
    for (auto& g : grouped) {
      g.bbox = bbox_of(g.member_blocks);
      g.mean_density = union_density(g.member_blocks, index);
    }
    changed = grouped.size() != regions.size();
    regions = std::move(grouped);
  }
  std::sort(regions.begin(), regions.end(), region_order);
  return regions;
}

Crop crop(const Frame& frame, const Rect& rect) {
  require_inside(rect, frame.width, frame.height);
  Crop c{rect, {}};
  c.pixels.reserve(static_cast<std::size_t>(rect.area()));
  for (int y = rect.y; y < rect.bottom(); ++y) {
    const auto* row = &frame.pixels[static_cast<std::size_t>(y) * frame.width];
    c.pixels.insert(c.pixels.end(), row + rect.x, row + rect.right());
  }
  return c;
}

MappedRegion map_to_frame(const CandidateRegion& region, const Frame& original) {
  return MappedRegion{region, crop(original, region.bbox)};
}

}  // namespace vtext
