#include "vtext/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "vtext/bitmap_font.hpp"

namespace fs = std::filesystem;

namespace vtext {

namespace {

int glyph_scale(int font_px) { return std::max(1, static_cast<int>(std::lround(font_px / 8.0))); }

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Box-Muller over mt19937_64, which (unlike the std distributions) yields the
// same stream on every standard library.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint8_t clamp8(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

double bounce(double start, double velocity, double t, double lo, double hi) {
  const double span = hi - lo;
  if (span <= 0.0) return lo;
  double p = std::fmod(start - lo + velocity * t, 2.0 * span);
  if (p < 0.0) p += 2.0 * span;
  return lo + (p <= span ? p : 2.0 * span - p);
}

Rgb read_color(const nlohmann::json& v) {
  if (v.is_number_integer()) {
    const auto g = static_cast<std::uint8_t>(std::clamp(v.get<int>(), 0, 255));
    return {g, g, g};
  }
  if (v.is_array() && v.size() == 3) {
    Rgb c{};
    for (int i = 0; i < 3; ++i) c[i] = static_cast<std::uint8_t>(std::clamp(v[i].get<int>(), 0, 255));
    return c;
  }
  throw Error(ErrorCode::InvalidConfig, "color: expected a gray level or [r, g, b]");
}

nlohmann::json color_json(const Rgb& c) { return nlohmann::json::array({c[0], c[1], c[2]}); }

}  // namespace

Rect caption_cell_box(const CaptionSpec& caption) {
  const int s = glyph_scale(caption.font_px);
  return {caption.x, caption.y, static_cast<int>(caption.text.size()) * font::kCellWidth * s, font::kCellHeight * s};
}

ClipSpec clip_spec_from_json(const nlohmann::json& doc) {
  ClipSpec spec;
  try {
    spec.width = doc.value("width", spec.width);
    spec.height = doc.value("height", spec.height);
    spec.count = doc.value("count", spec.count);
    spec.frame_rate = doc.value("frame_rate", spec.frame_rate);
    spec.seed = doc.value("seed", spec.seed);
    if (doc.contains("background")) {
      const auto& b = doc.at("background");
      auto& bg = spec.background;
      if (b.contains("color")) bg.color = read_color(b.at("color"));
      bg.gradient = b.value("gradient", bg.gradient);
      bg.noise = b.value("noise", bg.noise);
      bg.temporal_noise = b.value("temporal_noise", bg.temporal_noise);
      if (b.contains("source_image")) bg.source_image = b.at("source_image").get<std::string>();
      bg.flash_boost = b.value("flash_boost", bg.flash_boost);
      if (b.contains("flashes")) bg.flashes = b.at("flashes").get<std::vector<std::size_t>>();
      for (const auto& o : b.value("blobs", nlohmann::json::array())) {
        BlobSpec blob;
        blob.radius = o.value("radius", blob.radius);
        if (o.contains("color")) blob.color = read_color(o.at("color"));
        blob.x = o.value("x", blob.x);
        blob.y = o.value("y", blob.y);
        blob.vx = o.value("vx", blob.vx);
        blob.vy = o.value("vy", blob.vy);
        blob.square = o.value("shape", std::string("circle")) == "square";
        bg.blobs.push_back(blob);
      }
    }
    for (const auto& c : doc.value("captions", nlohmann::json::array())) {
      CaptionSpec cap;
      cap.text = c.at("text").get<std::string>();
      cap.font_px = c.value("font_px", cap.font_px);
      cap.x = c.at("x").get<int>();
      cap.y = c.at("y").get<int>();
      if (c.contains("color")) cap.color = read_color(c.at("color"));
      cap.frame_start = c.at("frame_start").get<std::size_t>();
      cap.frame_end = c.at("frame_end").get<std::size_t>();
      spec.captions.push_back(std::move(cap));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("clip spec: ") + e.what());
  }
  return spec;
}

nlohmann::json to_json(const ClipSpec& spec) {
  nlohmann::json doc;
  doc["width"] = spec.width;
  doc["height"] = spec.height;
  doc["count"] = spec.count;
  doc["frame_rate"] = spec.frame_rate;
  doc["seed"] = spec.seed;
  const auto& bg = spec.background;
  nlohmann::json b;
  b["color"] = color_json(bg.color);
  b["gradient"] = bg.gradient;
  b["noise"] = bg.noise;
  b["temporal_noise"] = bg.temporal_noise;
  if (bg.source_image) b["source_image"] = bg.source_image->string();
  b["flashes"] = bg.flashes;
  b["flash_boost"] = bg.flash_boost;
  b["blobs"] = nlohmann::json::array();
  for (const auto& o : bg.blobs) {
    b["blobs"].push_back({{"radius", o.radius}, {"color", color_json(o.color)}, {"x", o.x}, {"y", o.y},
                          {"vx", o.vx}, {"vy", o.vy}, {"shape", o.square ? "square" : "circle"}});
  }
  doc["background"] = std::move(b);
  doc["captions"] = nlohmann::json::array();
  for (const auto& c : spec.captions) {
    doc["captions"].push_back({{"text", c.text}, {"font_px", c.font_px}, {"x", c.x}, {"y", c.y},
                               {"color", color_json(c.color)}, {"frame_start", c.frame_start},
                               {"frame_end", c.frame_end}});
  }
  return doc;
}

SyntheticClip::SyntheticClip(ClipSpec spec) : spec_(std::move(spec)) {
  if (spec_.width < 1 || spec_.height < 1) throw Error(ErrorCode::InvalidConfig, "clip size must be positive");
  const int w = spec_.width;
  const int h = spec_.height;

  if (spec_.background.source_image) {
    RgbImage src = read_rgb(*spec_.background.source_image);
    RgbImage fitted(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::uint8_t* s = src.px(x * src.width / w, y * src.height / h);
        std::copy(s, s + 3, fitted.px(x, y));
      }
    }
    source_ = std::move(fitted);
  }

  base_.assign(static_cast<std::size_t>(w) * h, 0);
  Gaussian texture(splitmix(spec_.seed));
  const auto& bg = spec_.background;
  for (int y = 0; y < h; ++y) {
    const double ramp = h > 1 ? bg.gradient * (static_cast<double>(y) / (h - 1) - 0.5) : 0.0;
    for (int x = 0; x < w; ++x) {
      const double n = bg.noise > 0.0 ? bg.noise * texture() : 0.0;
      base_[static_cast<std::size_t>(y) * w + x] = static_cast<std::int16_t>(std::lround(ramp + n));
    }
  }

  for (std::size_t k = 0; k < spec_.captions.size(); ++k) {
    const auto& c = spec_.captions[k];
    const Rect cell = caption_cell_box(c);
    if (c.text.empty() || !cell.inside(w, h)) {
      throw Error(ErrorCode::CaptionOutOfBounds, "caption " + std::to_string(k) + " \"" + c.text + "\" leaves the frame");
    }
    if (c.frame_start > c.frame_end || c.frame_end >= spec_.count) {
      throw Error(ErrorCode::CaptionOutOfBounds, "caption " + std::to_string(k) + " span outside the clip");
    }
    const int s = glyph_scale(c.font_px);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(cell.area()), 0);
    int x0 = cell.w, y0 = cell.h, x1 = -1, y1 = -1;
    for (std::size_t ci = 0; ci < c.text.size(); ++ci) {
      const auto& g = font::glyph(c.text[ci]);
      for (int r = 0; r < font::kGlyphHeight; ++r) {
        for (int col = 0; col < font::kGlyphWidth; ++col) {
          if (!(g[r] & (1u << (font::kGlyphWidth - 1 - col)))) continue;
          const int px = static_cast<int>(ci) * font::kCellWidth * s + col * s;
          const int py = r * s;
          for (int dy = 0; dy < s; ++dy) {
            for (int dx = 0; dx < s; ++dx) mask[static_cast<std::size_t>(py + dy) * cell.w + px + dx] = 1;
          }
          x0 = std::min(x0, px);
          y0 = std::min(y0, py);
          x1 = std::max(x1, px + s - 1);
          y1 = std::max(y1, py + s - 1);
        }
      }
    }
    if (x1 < 0) throw Error(ErrorCode::CaptionOutOfBounds, "caption " + std::to_string(k) + " renders no pixels");
    caption_masks_.push_back(std::move(mask));
    caption_boxes_.push_back(cell);
    truth_.push_back(GroundTruthRegion{"c" + std::to_string(k),
                                       {cell.x + x0, cell.y + y0, x1 - x0 + 1, y1 - y0 + 1},
                                       c.frame_start, c.frame_end, c.text});
  }
}

RgbImage SyntheticClip::render(std::size_t index) const {
  const int w = spec_.width;
  const int h = spec_.height;
  const auto& bg = spec_.background;
  RgbImage img(w, h);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int16_t off = base_[static_cast<std::size_t>(y) * w + x];
      const std::uint8_t* src = source_ ? source_->px(x, y) : bg.color.data();
      std::uint8_t* p = img.px(x, y);
      for (int c = 0; c < 3; ++c) p[c] = clamp8(src[c] + off);
    }
  }

  const double t = static_cast<double>(index);
  for (const auto& b : bg.blobs) {
    const double cx = bounce(b.x, b.vx, t, b.radius, w - 1 - b.radius);
    const double cy = bounce(b.y, b.vy, t, b.radius, h - 1 - b.radius);
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - b.radius)));
    const int x1 = std::min(w - 1, static_cast<int>(std::ceil(cx + b.radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - b.radius)));
    const int y1 = std::min(h - 1, static_cast<int>(std::ceil(cy + b.radius)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = x - cx;
        const double dy = y - cy;
        const bool hit = b.square ? (std::abs(dx) <= b.radius && std::abs(dy) <= b.radius)
                                  : (dx * dx + dy * dy <= double(b.radius) * b.radius);
        if (hit) std::copy(b.color.begin(), b.color.end(), img.px(x, y));
      }
    }
  }

  for (std::size_t k = 0; k < spec_.captions.size(); ++k) {
    const auto& c = spec_.captions[k];
    if (index < c.frame_start || index > c.frame_end) continue;
    const Rect& box = caption_boxes_[k];
    const auto& mask = caption_masks_[k];
    for (int y = 0; y < box.h; ++y) {
      for (int x = 0; x < box.w; ++x) {
        if (mask[static_cast<std::size_t>(y) * box.w + x]) {
          std::copy(c.color.begin(), c.color.end(), img.px(box.x + x, box.y + y));
        }
      }
    }
  }

  const bool flash = std::find(bg.flashes.begin(), bg.flashes.end(), index) != bg.flashes.end();
  if (flash || bg.temporal_noise > 0.0) {
    Gaussian sensor(splitmix(spec_.seed ^ splitmix(index + 1)));
    for (std::size_t p = 0; p < static_cast<std::size_t>(w) * h; ++p) {
      const double n = (bg.temporal_noise > 0.0 ? bg.temporal_noise * sensor() : 0.0) + (flash ? bg.flash_boost : 0);
      std::uint8_t* px = &img.data[p * 3];
      for (int c = 0; c < 3; ++c) px[c] = clamp8(px[c] + n);
    }
  }
  return img;
}

Frame SyntheticClip::render_gray(std::size_t index) const { return to_grayscale(render(index), index); }

SyntheticResult generate_synthetic_clip(const ClipSpec& spec) {
  SyntheticClip clip(spec);
  std::vector<Frame> frames(spec.count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(spec.count); ++i) {
    frames[i] = clip.render_gray(static_cast<std::size_t>(i));
  }
  return {FrameSequence::from_frames(std::move(frames), spec.frame_rate, "synthetic:" + std::to_string(spec.seed)),
          clip.truth()};
}

void write_synthetic_clip(const ClipSpec& spec, const fs::path& out_dir) {
  SyntheticClip clip(spec);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string());
  for (std::size_t i = 0; i < spec.count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.png", i);
    write_image(out_dir / name, clip.render(i));
  }
  std::ofstream gt(out_dir / "gt.json");
  if (!gt) throw Error(ErrorCode::IoError, "cannot write " + (out_dir / "gt.json").string());
  gt << to_json(std::span<const GroundTruthRegion>(clip.truth())).dump(2) << '\n';
}

}  // namespace vtext
