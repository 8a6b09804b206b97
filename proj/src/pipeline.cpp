#include "vtext/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>

#include "vtext/change_detect.hpp"
#include "vtext/edgemap.hpp"
#include "vtext/kernels.hpp"

namespace fs = std::filesystem;

namespace vtext {

namespace {

// Binary edge maps by frame index. Accessed from the driving thread only.
class EdgeCache {
 public:
  explicit EdgeCache(const FrameSequence& seq) : seq_(seq) {}

  std::shared_ptr<const BinaryEdgeFrame> get(std::size_t k) {
    auto& slot = maps_[k];
    if (!slot) slot = std::make_shared<const BinaryEdgeFrame>(map_edges(*seq_.at(k)).binary);
    return slot;
  }

  void evict_below(std::size_t k) { maps_.erase(maps_.begin(), maps_.lower_bound(k)); }

 private:
  const FrameSequence& seq_;
  std::map<std::size_t, std::shared_ptr<const BinaryEdgeFrame>> maps_;
};

// Localizations of (reference, j) for one trigger. Misses are filled a chunk
// of worker_count() window frames at a time, the chunk localized in parallel.
class WindowProbes {
 public:
  WindowProbes(EdgeCache& edges, const LocalizeConfig& cfg, std::size_t reference, std::size_t last,
               std::size_t stride)
      : edges_(edges), cfg_(cfg), reference_(reference), last_(last), stride_(stride) {}

  void put(std::size_t j, LocalizedPair pair) { probes_[j] = std::make_unique<LocalizedPair>(std::move(pair)); }

  const LocalizedPair& get(std::size_t j) {
    if (auto it = probes_.find(j); it != probes_.end()) return *it->second;

    std::vector<std::size_t> chunk;
    const auto workers = static_cast<std::size_t>(std::max(kernels::worker_count(), 1));
    for (std::size_t t = j; t <= last_ && chunk.size() < workers; t += stride_) {
      if (!probes_.count(t)) chunk.push_back(t);
    }
    if (chunk.empty()) chunk.push_back(j);

    auto reference = edges_.get(reference_);
    std::vector<std::shared_ptr<const BinaryEdgeFrame>> targets;
    for (std::size_t t : chunk) targets.push_back(edges_.get(t));

    std::vector<std::unique_ptr<LocalizedPair>> out(chunk.size());
    const auto n = static_cast<std::ptrdiff_t>(chunk.size());
#pragma omp parallel for schedule(dynamic) if (n > 1)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      out[c] = std::make_unique<LocalizedPair>(localize(*reference, *targets[c], cfg_, reference_));
    }
    for (std::size_t c = 0; c < chunk.size(); ++c) probes_[chunk[c]] = std::move(out[c]);
    return *probes_.at(j);
  }

 private:
  EdgeCache& edges_;
  const LocalizeConfig& cfg_;
  std::size_t reference_;
  std::size_t last_;
  std::size_t stride_;
  std::map<std::size_t, std::unique_ptr<LocalizedPair>> probes_;
};

std::string pair_stem(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "pair_%06zu", i);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::IoError, "cannot create directory " + dir.string());
}

Frame bits_image(const BinaryEdgeFrame& b) {
  Frame f(0, b.width, b.height);
  for (std::size_t i = 0; i < b.bits.size(); ++i) f.pixels[i] = b.bits[i] ? 255 : 0;
  return f;
}

void dump_edges(const fs::path& dir, std::size_t i, const Frame& next, const LocalizedPair& pair) {
  const auto mapping = map_edges(next);
  Frame levels(0, next.width, next.height);
  levels.pixels = mapping.levels;
  const auto stem = pair_stem(i);
  write_image(dir / (stem + "_edges.pgm"), levels);
  write_image(dir / (stem + "_binary.pgm"), bits_image(mapping.binary));
  write_image(dir / (stem + "_diff.pgm"), bits_image(pair.difference));
}

// Leaves filled in red by density, leaf borders green, edge pixels white.
void dump_quadtree(const fs::path& dir, std::size_t i, const LocalizedPair& pair) {
  const auto& diff = pair.difference;
  RgbImage img(diff.width, diff.height);
  for (const auto& leaf : collect_leaves(pair.root)) {
    const auto shade = static_cast<std::uint8_t>(std::lround(leaf.density * 255.0));
    const Rect& r = leaf.rect;
    for (int y = r.y; y < r.bottom(); ++y) {
      for (int x = r.x; x < r.right(); ++x) {
        std::uint8_t* p = img.px(x, y);
        const bool border = x == r.x || y == r.y;
        if (diff.at(x, y)) {
          p[0] = p[1] = p[2] = 255;
        } else {
          p[0] = shade;
          p[1] = border ? 160 : 0;
          p[2] = 0;
        }
      }
    }
  }
  write_image(dir / (pair_stem(i) + "_quadtree.png"), img);
}

bool windows_overlap(const TextRegion& a, const TextRegion& b) {
  const auto a_end = a.first_frame + static_cast<std::size_t>(std::max(a.persistence, 1));
  const auto b_end = b.first_frame + static_cast<std::size_t>(std::max(b.persistence, 1));
  return a.first_frame < b_end && b.first_frame < a_end;
}

void deduplicate(std::vector<TextRegion>& regions) {
  std::vector<TextRegion> kept;
  std::vector<std::size_t> confirmed;  // positions in `kept`
  for (auto& r : regions) {
    if (r.status == RegionStatus::Confirmed) {
      const bool dup = std::any_of(confirmed.begin(), confirmed.end(), [&](std::size_t k) {
        return iou(kept[k].bbox, r.bbox) >= 0.8 && windows_overlap(kept[k], r);
      });
      if (dup) continue;
      confirmed.push_back(kept.size());
    }
    kept.push_back(r);
  }
  regions = std::move(kept);
}

}  // namespace

std::vector<TextRegion> DetectionRun::confirmed() const {
  std::vector<TextRegion> out;
  std::copy_if(regions.begin(), regions.end(), std::back_inserter(out),
               [](const TextRegion& r) { return r.status == RegionStatus::Confirmed; });
  return out;
}

DetectionRun process_sequence(const FrameSequence& seq, const PipelineConfig& cfg, const PipelineOptions& options) {
  cfg.validate();
  if (seq.count() < 2) throw Error(ErrorCode::NoFrames, seq.source() + " has fewer than 2 frames");
  if (options.dump_edges_dir) ensure_dir(*options.dump_edges_dir);
  if (options.dump_quadtree_dir) ensure_dir(*options.dump_quadtree_dir);

  const auto start = std::chrono::steady_clock::now();
  DetectionRun run;
  run.source = seq.source();
  run.config = cfg;

  const auto& fc = cfg.filter;
  const auto window = static_cast<std::size_t>(fc.window_n);
  const auto stride = static_cast<std::size_t>(fc.shift_k);
  const std::size_t total_pairs = seq.count() - 1;

  EdgeCache edges(seq);
  auto prev = seq.at(0);
  Histogram prev_hist = gray_histogram(*prev);

  for (std::size_t i = 0; i < total_pairs; ++i) {
    auto next = seq.at(i + 1);
    const Histogram next_hist = gray_histogram(*next);
    ++run.pairs_processed;
    const double d_h = histogram_difference(prev_hist, next_hist, next->size());

    if (detect_change(d_h, cfg.theta)) {
      ++run.pairs_triggered;
      edges.evict_below(i);
      LocalizedPair pair = localize(*edges.get(i), *edges.get(i + 1), cfg.localize, i);
      if (options.dump_edges_dir) dump_edges(*options.dump_edges_dir, i, *next, pair);
      if (options.dump_quadtree_dir) dump_quadtree(*options.dump_quadtree_dir, i, pair);

      std::vector<CandidateRegion> survivors;
      for (const auto& candidate : pair.candidates) {
        TextRegion r{candidate.bbox, i + 1, 0, candidate.mean_density, RegionStatus::RejectedSize};
        if (!size_filter(candidate, fc)) {
          run.regions.push_back(r);
          continue;
        }
        const MappedRegion mapped = map_to_frame(candidate, *next);
        if (!contrast_filter(mapped.crop.pixels, fc.sigma)) {
          r.status = RegionStatus::RejectedContrast;
          run.regions.push_back(r);
          continue;
        }
        survivors.push_back(candidate);
      }

      if (!survivors.empty()) {
        WindowProbes probes(edges, cfg.localize, i, std::min(i + window, seq.count() - 1), stride);
        probes.put(i + 1, std::move(pair));
        auto probe = [&](std::size_t j) -> const LocalizedPair& { return probes.get(j); };
        for (const auto& s : survivors) {
          const TemporalVerdict v = temporal_filter(s, i, seq.count(), fc, probe);
          run.regions.push_back(TextRegion{s.bbox, i + 1, v.persistence, s.mean_density, v.status});
        }
      }
    }

    if (options.progress) options.progress(i + 1, total_pairs);
    prev = std::move(next);
    prev_hist = next_hist;
  }

  deduplicate(run.regions);
  run.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

nlohmann::json to_json(const DetectionRun& run, bool include_elapsed) {
  nlohmann::json doc;
  doc["source"] = run.source;
  doc["config"] = to_json(run.config);
  auto regions = nlohmann::json::array();
  for (const auto& r : run.regions) {
    regions.push_back({
        {"bbox", {{"x", r.bbox.x}, {"y", r.bbox.y}, {"w", r.bbox.w}, {"h", r.bbox.h}}},
        {"first_frame", r.first_frame},
        {"persistence", r.persistence},
        {"status", std::string(to_string(r.status))},
        {"mean_density", r.mean_density},
    });
  }
  doc["regions"] = std::move(regions);
  doc["stats"] = {{"pairs_processed", run.pairs_processed}, {"pairs_triggered", run.pairs_triggered}};
  if (include_elapsed) doc["stats"]["elapsed_seconds"] = run.elapsed_seconds;
  return doc;
}

DetectionRun run_from_json(const nlohmann::json& doc) {
  DetectionRun run;
  try {
    run.source = doc.value("source", std::string{});
    if (doc.contains("config")) run.config = apply_config(PipelineConfig{}, doc.at("config"));
    for (const auto& r : doc.at("regions")) {
      TextRegion t;
      const auto& b = r.at("bbox");
      t.bbox = {b.at("x").get<int>(), b.at("y").get<int>(), b.at("w").get<int>(), b.at("h").get<int>()};
      t.first_frame = r.at("first_frame").get<std::size_t>();
      t.persistence = r.at("persistence").get<int>();
      t.mean_density = r.value("mean_density", 0.0);
      const auto status = parse_status(r.at("status").get<std::string>());
      if (!status) throw Error(ErrorCode::DecodeError, "unknown region status " + r.at("status").dump());
      t.status = *status;
      run.regions.push_back(t);
    }
    if (doc.contains("stats")) {
      const auto& s = doc.at("stats");
      run.pairs_processed = s.value("pairs_processed", std::size_t{0});
      run.pairs_triggered = s.value("pairs_triggered", std::size_t{0});
      run.elapsed_seconds = s.value("elapsed_seconds", 0.0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::DecodeError, std::string("detection run: ") + e.what());
  }
  return run;
}

std::size_t render_overlays(const DetectionRun& run, const FrameSequence& seq, const fs::path& out_dir) {
  ensure_dir(out_dir);
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rect>>> by_frame;
  std::size_t ordinal = 0;
  for (const auto& r : run.regions) {
    if (r.status != RegionStatus::Confirmed) continue;
    by_frame[r.first_frame].emplace_back(ordinal++, r.bbox);
  }

  for (const auto& [frame_index, boxes] : by_frame) {
    const auto frame = seq.at(frame_index);
    RgbImage img(frame->width, frame->height);
    for (std::size_t p = 0; p < frame->pixels.size(); ++p) {
      img.data[3 * p] = img.data[3 * p + 1] = img.data[3 * p + 2] = frame->pixels[p];
    }
    std::string name = "frame_" + std::to_string(frame_index) + "_region";
    for (const auto& [ord, box] : boxes) {
      name += "_" + std::to_string(ord);
      for (int x = box.x; x < box.right(); ++x) {
        for (int y : {box.y, box.bottom() - 1}) {
          std::uint8_t* p = img.px(x, y);
          p[0] = 255, p[1] = 0, p[2] = 0;
        }
      }
      for (int y = box.y; y < box.bottom(); ++y) {
        for (int x : {box.x, box.right() - 1}) {
          std::uint8_t* p = img.px(x, y);
          p[0] = 255, p[1] = 0, p[2] = 0;
        }
      }
    }
    write_image(out_dir / (name + ".png"), img);
  }
  return by_frame.size();
}

}  // namespace vtext
