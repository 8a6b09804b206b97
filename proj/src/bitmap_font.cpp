#include "vtext/bitmap_font.hpp"

#include <cctype>
#include <map>

namespace vtext::font {

namespace {

Glyph parse(const std::array<const char*, kGlyphHeight>& rows) {
  Glyph g{};
  for (int r = 0; r < kGlyphHeight; ++r) {
    for (int c = 0; c < kGlyphWidth; ++c) {
      if (rows[r][c] == '#') g[r] |= static_cast<std::uint8_t>(1u << (kGlyphWidth - 1 - c));
    }
  }
  return g;
}

const std::map<char, Glyph>& table() {
  static const std::map<char, Glyph> t = {
      {' ', parse({".....", ".....", ".....", ".....", ".....", ".....", "....."})},
      {'A', parse({".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"})},
      {'B', parse({"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."})},
      {'C', parse({".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."})},
      {'D', parse({"###..", "#..#.", "#...#", "#...#", "#...#", "#..#.", "###.."})},
      {'E', parse({"#####", "#....", "#....", "####.", "#....", "#....", "#####"})},
      {'F', parse({"#####", "#....", "#....", "####.", "#....", "#....", "#...."})},
      {'G', parse({".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"})},
      {'H', parse({"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"})},
      {'I', parse({".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."})},
      {'J', parse({"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."})},
      {'K', parse({"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"})},
      {'L', parse({"#....", "#....", "#....", "#....", "#....", "#....", "#####"})},
      {'M', parse({"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"})},
      {'N', parse({"#...#", "#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#"})},
      {'O', parse({".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."})},
      {'P', parse({"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."})},
      {'Q', parse({".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"})},
      {'R', parse({"####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"})},
      {'S', parse({".####", "#....", "#....", ".###.", "....#", "....#", "####."})},
      {'T', parse({"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."})},
      {'U', parse({"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."})},
      {'V', parse({"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."})},
      {'W', parse({"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "#.#.#", ".#.#."})},
      {'X', parse({"#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"})},
      {'Y', parse({"#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."})},
      {'Z', parse({"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"})},
      {'0', parse({".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."})},
      {'1', parse({"..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."})},
      {'2', parse({".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"})},
      {'3', parse({"#####", "...#.", "..#..", "...#.", "....#", "#...#", ".###."})},
      {'4', parse({"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."})},
      {'5', parse({"#####", "#....", "####.", "....#", "....#", "#...#", ".###."})},
      {'6', parse({"..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."})},
      {'7', parse({"#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."})},
      {'8', parse({".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."})},
      {'9', parse({".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."})},
      {'.', parse({".....", ".....", ".....", ".....", ".....", ".##..", ".##.."})},
      {',', parse({".....", ".....", ".....", ".....", ".##..", "..#..", ".#..."})},
      {':', parse({".....", ".##..", ".##..", ".....", ".##..", ".##..", "....."})},
      {'-', parse({".....", ".....", ".....", "#####", ".....", ".....", "....."})},
      {'!', parse({"..#..", "..#..", "..#..", "..#..", "..#..", ".....", "..#.."})},
      {'?', parse({".###.", "#...#", "....#", "...#.", "..#..", ".....", "..#.."})},
      {'\'', parse({".##..", "..#..", ".#...", ".....", ".....", ".....", "....."})},
      {'/', parse({".....", "....#", "...#.", "..#..", ".#...", "#....", "....."})},
      {'&', parse({".##..", "#..#.", "#.#..", ".#...", "#.#.#", "#..#.", ".##.#"})},
      {'(', parse({"...#.", "..#..", ".#...", ".#...", ".#...", "..#..", "...#."})},
      {')', parse({".#...", "..#..", "...#.", "...#.", "...#.", "..#..", ".#..."})},
  };
  return t;
}

}  // namespace

const Glyph& glyph(char c) {
  const auto& t = table();
  const char key = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (auto it = t.find(key); it != t.end()) return it->second;
  return t.at('?');
}

}  // namespace vtext::font
