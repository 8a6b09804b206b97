#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace vtext::font {

// Fixed 5x7 glyphs on a 6x8 cell (one column and one row of spacing).
// Lower case renders as upper case; unknown characters render as '?'.
inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;
inline constexpr int kCellWidth = 6;
inline constexpr int kCellHeight = 8;

// Row bitmasks, bit 4 = leftmost column.
using Glyph = std::array<std::uint8_t, kGlyphHeight>;

const Glyph& glyph(char c);

}  // namespace vtext::font
