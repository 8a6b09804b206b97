#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "vtext/image.hpp"

namespace vtext {

// BT.601 luma, round half up.
inline std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

Frame to_grayscale(const RgbImage& rgb, std::size_t index = 0);

// Read-only, random-access view over an ordered run of equally sized frames.
// Copies are cheap and share the underlying storage; concurrent at() calls
// are safe.
class FrameSequence {
 public:
  FrameSequence() = default;

  // Frames are re-indexed 0..n-1 in the given order.
  static FrameSequence from_frames(std::vector<Frame> frames, double frame_rate = 25.0,
                                   std::string source = "memory");

  std::size_t count() const;
  int width() const;
  int height() const;
  double frame_rate() const;
  const std::string& source() const;

  std::shared_ptr<const Frame> at(std::size_t index) const;

  class Store;

 private:
  explicit FrameSequence(std::shared_ptr<const Store> store) : store_(std::move(store)) {}
  friend FrameSequence open_sequence(const std::filesystem::path&, double);

  std::shared_ptr<const Store> store_;
};

// Opens a directory of numbered PNG/PGM frames, a glob over file names
// ("clips/a/frame_*.png"), or a JSON manifest listing relative paths.
// Frames decode lazily; dimensions are probed from the file headers up front.
FrameSequence open_sequence(const std::filesystem::path& path, double frame_rate = 25.0);

// Files matched by `path` in sequence order (numeric sort on the first digit
// run of the file name).
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& path);

Frame read_gray(const std::filesystem::path& path, std::size_t index = 0);
RgbImage read_rgb(const std::filesystem::path& path);

void write_image(const std::filesystem::path& path, const Frame& frame);
void write_image(const std::filesystem::path& path, const RgbImage& image);

}  // namespace vtext
