#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vtext/filtering.hpp"
#include "vtext/geometry.hpp"

namespace vtext {

struct GroundTruthRegion {
  std::string id;
  Rect bbox;
  std::size_t frame_start = 0;
  std::size_t frame_end = 0;  // inclusive
  std::string text;           // informational
};

struct RegionMatch {
  std::size_t detection = 0;  // index into the detected list
  std::size_t truth = 0;      // index into the truth list
  std::string truth_id;
  double iou = 0.0;
};

// Greedy one-to-one matching by descending IoU. A pair is eligible when
// IoU >= iou_min and the detection's span [first_frame, first_frame +
// persistence - 1] overlaps the truth span by >= temporal_overlap_min frames.
std::vector<RegionMatch> match_regions(std::span<const TextRegion> detected,
                                       std::span<const GroundTruthRegion> truth, double iou_min,
                                       int temporal_overlap_min = 1);

// Ratios are named by their denominator. The same numbers are also exposed
// under the two conflicting recall/precision labelings in to_json.
struct EvalReport {
  std::size_t detected = 0;
  std::size_t correct = 0;
  std::size_t ground_truth = 0;
  std::optional<double> ratio_over_detected;  // unset when detected == 0
  std::optional<double> ratio_over_truth;     // unset when ground_truth == 0
  std::optional<double> false_alarm;          // unset when detected == 0
  std::vector<RegionMatch> matches;
};

EvalReport compute_metrics(std::vector<RegionMatch> matches, std::size_t detected_count, std::size_t truth_count);

EvalReport evaluate(std::span<const TextRegion> detected, std::span<const GroundTruthRegion> truth,
                    double iou_min = 0.5, int temporal_overlap_min = 1);

nlohmann::json to_json(const EvalReport& report);

nlohmann::json to_json(std::span<const GroundTruthRegion> truth);
std::vector<GroundTruthRegion> truth_from_json(const nlohmann::json& doc);
std::vector<GroundTruthRegion> load_ground_truth(const std::filesystem::path& path);

}  // namespace vtext
