#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>

namespace vtext {

// Axis-aligned pixel rectangle; (x, y) is the top-left corner.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }    // exclusive
  int bottom() const { return y + h; }   // exclusive
  std::int64_t area() const { return std::int64_t{w} * h; }
  bool empty() const { return w <= 0 || h <= 0; }

  bool inside(int width, int height) const {
    return x >= 0 && y >= 0 && w >= 1 && h >= 1 && right() <= width && bottom() <= height;
  }

  bool contains(const Rect& o) const {
    return o.x >= x && o.y >= y && o.right() <= right() && o.bottom() <= bottom();
  }

  Rect transposed() const { return {y, x, h, w}; }

  auto operator<=>(const Rect&) const = default;
};

inline std::optional<Rect> intersection(const Rect& a, const Rect& b) {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.right(), b.right());
  const int y1 = std::min(a.bottom(), b.bottom());
  if (x1 <= x0 || y1 <= y0) return std::nullopt;
  return Rect{x0, y0, x1 - x0, y1 - y0};
}

inline Rect bounding_union(const Rect& a, const Rect& b) {
  const int x0 = std::min(a.x, b.x);
  const int y0 = std::min(a.y, b.y);
  const int x1 = std::max(a.right(), b.right());
  const int y1 = std::max(a.bottom(), b.bottom());
  return {x0, y0, x1 - x0, y1 - y0};
}

inline double iou(const Rect& a, const Rect& b) {
  const auto inter = intersection(a, b);
  if (!inter) return 0.0;
  const double i = static_cast<double>(inter->area());
  return i / (static_cast<double>(a.area()) + static_cast<double>(b.area()) - i);
}

// True when the two rectangles share a boundary segment of length >= 1.
// Corner-only contact does not count.
inline bool edge_adjacent(const Rect& a, const Rect& b) {
  if (a.right() == b.x || b.right() == a.x) {
    return std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y) >= 1;
  }
  if (a.bottom() == b.y || b.bottom() == a.y) {
    return std::min(a.right(), b.right()) - std::max(a.x, b.x) >= 1;
  }
  return false;
}

}  // namespace vtext
