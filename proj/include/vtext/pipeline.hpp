#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vtext/config.hpp"
#include "vtext/filtering.hpp"
#include "vtext/frame_io.hpp"

namespace vtext {

struct DetectionRun {
  std::string source;
  PipelineConfig config;
  std::vector<TextRegion> regions;  // every filtered candidate, in detection order
  std::size_t pairs_processed = 0;
  std::size_t pairs_triggered = 0;
  double elapsed_seconds = 0.0;

  std::vector<TextRegion> confirmed() const;
};

struct PipelineOptions {
  std::optional<std::filesystem::path> dump_edges_dir;     // per triggered pair: edge, binary, diff PGMs
  std::optional<std::filesystem::path> dump_quadtree_dir;  // per triggered pair: leaf layout PNG
  std::function<void(std::size_t pair, std::size_t total)> progress;
};

// Scans consecutive pairs, localizes candidates on triggered pairs, filters
// them by size, contrast and temporal persistence, and collapses confirmed
// duplicates (IoU >= 0.8 with overlapping windows) onto the earliest one.
DetectionRun process_sequence(const FrameSequence& seq, const PipelineConfig& cfg,
                              const PipelineOptions& options = {});

// {source, config, regions:[{bbox:{x,y,w,h}, first_frame, persistence, status,
// mean_density}], stats:{pairs_processed, pairs_triggered, elapsed_seconds}}
nlohmann::json to_json(const DetectionRun& run, bool include_elapsed = true);
DetectionRun run_from_json(const nlohmann::json& doc);

// One image per distinct first_frame holding all regions confirmed there.
std::size_t render_overlays(const DetectionRun& run, const FrameSequence& seq,
                            const std::filesystem::path& out_dir);

}  // namespace vtext
