#include <doctest.h>

#include "corpus.hpp"
#include "test_util.hpp"
#include "vtext/bitmap_font.hpp"
#include "vtext/synth.hpp"

using namespace vtext;

TEST_CASE("single caption clip truth") {
  const auto clip = generate_synthetic_clip(testing::static_caption_clip(100, 10));
  REQUIRE(clip.truth.size() == 1);
  CHECK(clip.truth[0].frame_start == 10);
  CHECK(clip.truth[0].frame_end == 99);
  CHECK(clip.truth[0].text == "BREAKING NEWS");
  CHECK(clip.frames.count() == 100);

  // truth is the tight box of caption-colored pixels in a frame with the caption
  const auto f = clip.frames.at(50);
  const Rect box = clip.truth[0].bbox;
  int x0 = 1000, y0 = 1000, x1 = -1, y1 = -1;
  for (int y = 0; y < f->height; ++y) {
    for (int x = 0; x < f->width; ++x) {
      if (f->at(x, y) != 240) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  CHECK(Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1} == box);
  CHECK(caption_cell_box(testing::static_caption_clip().captions[0]).contains(box));
  // before the caption appears the box is background
  const auto before = clip.frames.at(9);
  for (int x = box.x; x < box.right(); ++x) REQUIRE(before->at(x, box.y + box.h / 2) == 70);
}

TEST_CASE("three captions with disjoint spans") {
  ClipSpec spec;
  spec.count = 90;
  for (int i = 0; i < 3; ++i) {
    CaptionSpec c;
    c.text = "CAP " + std::to_string(i);
    c.x = 20;
    c.y = 20 + 40 * i;
    c.frame_start = 30 * static_cast<std::size_t>(i);
    c.frame_end = c.frame_start + 29;
    spec.captions.push_back(c);
  }
  const auto clip = generate_synthetic_clip(spec);
  REQUIRE(clip.truth.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(clip.truth[i].frame_start == 30u * i);
    CHECK(clip.truth[i].frame_end == 30u * i + 29);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  auto spec = testing::detection_corpus()[4];
  const SyntheticClip a(spec), b(spec);
  CHECK(a.render(37).data == b.render(37).data);
  CHECK(a.render_gray(37).pixels == b.render_gray(37).pixels);
  spec.seed += 1;
  const SyntheticClip c(spec);
  CHECK(a.render(37).data != c.render(37).data);
  CHECK(a.truth()[0].bbox == c.truth()[0].bbox);
}

TEST_CASE("noise does not move the truth") {
  auto spec = testing::static_caption_clip();
  const auto plain = SyntheticClip(spec).truth();
  spec.background.noise = 30.0;
  spec.background.temporal_noise = 5.0;
  CHECK(SyntheticClip(spec).truth()[0].bbox == plain[0].bbox);
}

TEST_CASE("captions outside the frame are rejected") {
  auto spec = testing::static_caption_clip();
  spec.captions[0].x = 300;
  CHECK_THROWS_AS(SyntheticClip{spec}, Error);
  spec = testing::static_caption_clip();
  spec.captions[0].frame_end = spec.count;
  try {
    SyntheticClip{spec};
    FAIL("expected CaptionOutOfBounds");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CaptionOutOfBounds);
  }
}

TEST_CASE("glyph scaling follows the font size") {
  CaptionSpec c;
  c.text = "AB";
  c.font_px = 24;
  CHECK(caption_cell_box(c) == Rect{0, 0, 2 * font::kCellWidth * 3, font::kCellHeight * 3});
  c.font_px = 4;
  CHECK(caption_cell_box(c).h == font::kCellHeight);
  CHECK(font::glyph('a') == font::glyph('A'));
  CHECK(font::glyph('~') == font::glyph('?'));
}

TEST_CASE("spec JSON round trip and clip writing") {
  auto spec = testing::negative_corpus()[0];
  spec.count = 3;
  spec.captions.push_back({"HI", 16, 10, 10, {255, 0, 0}, 0, 2});
  const auto back = clip_spec_from_json(to_json(spec));
  CHECK(to_json(back) == to_json(spec));

  test::TempDir dir("synth");
  write_synthetic_clip(spec, dir.path());
  const auto seq = open_sequence(dir.path());
  CHECK(seq.count() == 3);
  const SyntheticClip clip(spec);
  CHECK(seq.at(1)->pixels == clip.render_gray(1).pixels);
  CHECK(load_ground_truth(dir / "gt.json").size() == 1);
}
