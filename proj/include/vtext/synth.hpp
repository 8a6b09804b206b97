#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vtext/evaluation.hpp"
#include "vtext/frame_io.hpp"

namespace vtext {

using Rgb = std::array<std::uint8_t, 3>;

struct CaptionSpec {
  std::string text;
  int font_px = 16;  // cell height; glyphs scale by max(1, round(font_px / 8))
  int x = 0;         // top-left of the first character cell
  int y = 0;
  Rgb color{255, 255, 255};
  std::size_t frame_start = 0;
  std::size_t frame_end = 0;  // inclusive
};

// A filled disc or square bouncing off the frame borders at constant speed.
struct BlobSpec {
  int radius = 12;
  Rgb color{255, 255, 255};
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;  // pixels per frame
  double vy = 0.0;
  bool square = false;
};

struct BackgroundSpec {
  Rgb color{96, 96, 96};
  double gradient = 0.0;        // top-to-bottom brightness ramp amplitude
  double noise = 0.0;           // sigma of a static per-pixel texture
  double temporal_noise = 0.0;  // sigma of fresh per-frame sensor noise
  std::optional<std::filesystem::path> source_image;
  std::vector<BlobSpec> blobs;
  std::vector<std::size_t> flashes;  // frames brightened by flash_boost
  int flash_boost = 150;
};

struct ClipSpec {
  int width = 352;
  int height = 288;
  std::size_t count = 100;
  double frame_rate = 25.0;
  std::uint64_t seed = 1;
  BackgroundSpec background;
  std::vector<CaptionSpec> captions;
};

ClipSpec clip_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ClipSpec& spec);

// Deterministic renderer: frame i depends only on the clip spec (seed included).
class SyntheticClip {
 public:
  // Throws CaptionOutOfBounds when a caption leaves the frame or its span
  // leaves [0, count).
  explicit SyntheticClip(ClipSpec spec);

  const ClipSpec& spec() const { return spec_; }
  const std::vector<GroundTruthRegion>& truth() const { return truth_; }

  RgbImage render(std::size_t index) const;
  Frame render_gray(std::size_t index) const;

 private:
  ClipSpec spec_;
  std::vector<std::int16_t> base_;  // background luminance offsets + texture, per channel-shared pixel
  std::optional<RgbImage> source_;
  std::vector<std::vector<std::uint8_t>> caption_masks_;  // per caption, over its cell box
  std::vector<Rect> caption_boxes_;
  std::vector<GroundTruthRegion> truth_;
};

struct SyntheticResult {
  FrameSequence frames;
  std::vector<GroundTruthRegion> truth;
};

SyntheticResult generate_synthetic_clip(const ClipSpec& spec);

// Writes frame_0000.png ... (RGB) and gt.json into out_dir.
void write_synthetic_clip(const ClipSpec& spec, const std::filesystem::path& out_dir);

// Pixel size of a rendered caption's character-cell box.
Rect caption_cell_box(const CaptionSpec& caption);

}  // namespace vtext
