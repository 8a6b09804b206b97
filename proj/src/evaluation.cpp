#include "vtext/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

namespace vtext {

std::vector<RegionMatch> match_regions(std::span<const TextRegion> detected,
                                       std::span<const GroundTruthRegion> truth, double iou_min,
                                       int temporal_overlap_min) {
  std::vector<RegionMatch> eligible;
  for (std::size_t d = 0; d < detected.size(); ++d) {
    const auto& det = detected[d];
    const auto det_start = static_cast<long long>(det.first_frame);
    const auto det_end = det_start + std::max(det.persistence, 1) - 1;
    for (std::size_t t = 0; t < truth.size(); ++t) {
      const auto& gt = truth[t];
      const long long overlap = std::min(det_end, static_cast<long long>(gt.frame_end)) -
                                std::max(det_start, static_cast<long long>(gt.frame_start)) + 1;
      if (overlap < temporal_overlap_min) continue;
      const double v = iou(det.bbox, gt.bbox);
      if (v >= iou_min) eligible.push_back({d, t, gt.id, v});
    }
  }
  std::stable_sort(eligible.begin(), eligible.end(), [](const RegionMatch& a, const RegionMatch& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    return std::tie(a.detection, a.truth) < std::tie(b.detection, b.truth);
  });

  std::vector<bool> det_used(detected.size(), false);
  std::vector<bool> gt_used(truth.size(), false);
  std::vector<RegionMatch> matches;
  for (auto& m : eligible) {
    if (det_used[m.detection] || gt_used[m.truth]) continue;
    det_used[m.detection] = gt_used[m.truth] = true;
    matches.push_back(std::move(m));
  }
  std::sort(matches.begin(), matches.end(),
            [](const RegionMatch& a, const RegionMatch& b) { return a.detection < b.detection; });
  return matches;
}

EvalReport compute_metrics(std::vector<RegionMatch> matches, std::size_t detected_count, std::size_t truth_count) {
  EvalReport r;
  r.detected = detected_count;
  r.ground_truth = truth_count;
  r.correct = matches.size();
  r.matches = std::move(matches);
  if (detected_count > 0) {
    const auto d = static_cast<double>(detected_count);
    r.ratio_over_detected = static_cast<double>(r.correct) / d;
    r.false_alarm = static_cast<double>(detected_count - r.correct) / d;
  }
  if (truth_count > 0) r.ratio_over_truth = static_cast<double>(r.correct) / static_cast<double>(truth_count);
  return r;
}

EvalReport evaluate(std::span<const TextRegion> detected, std::span<const GroundTruthRegion> truth, double iou_min,
                    int temporal_overlap_min) {
  return compute_metrics(match_regions(detected, truth, iou_min, temporal_overlap_min), detected.size(),
                         truth.size());
}

nlohmann::json to_json(const EvalReport& report) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(); };
  nlohmann::json doc;
  doc["counts"] = {{"detected", report.detected}, {"correct", report.correct}, {"ground_truth", report.ground_truth}};
  doc["ratio_over_detected"] = opt(report.ratio_over_detected);
  doc["ratio_over_truth"] = opt(report.ratio_over_truth);
  doc["false_alarm"] = opt(report.false_alarm);
  // The same two ratios under both labelings: paper_labels calls the ratio
  // over detections "recall", conventional_labels calls it "precision".
  doc["paper_labels"] = {{"recall", opt(report.ratio_over_detected)},
                         {"precision", opt(report.ratio_over_truth)},
                         {"false_alarm", opt(report.false_alarm)}};
  doc["conventional_labels"] = {{"precision", opt(report.ratio_over_detected)},
                                {"recall", opt(report.ratio_over_truth)},
                                {"false_alarm", opt(report.false_alarm)}};
  auto undefined = nlohmann::json::array();
  if (!report.ratio_over_detected) undefined.push_back("ratio_over_detected");
  if (!report.false_alarm) undefined.push_back("false_alarm");
  if (!report.ratio_over_truth) undefined.push_back("ratio_over_truth");
  doc["undefined"] = std::move(undefined);
  auto matches = nlohmann::json::array();
  for (const auto& m : report.matches) {
    matches.push_back({{"detection", m.detection}, {"truth_id", m.truth_id}, {"iou", m.iou}});
  }
  doc["matches"] = std::move(matches);
  return doc;
}

nlohmann::json to_json(std::span<const GroundTruthRegion> truth) {
  auto doc = nlohmann::json::array();
  for (const auto& g : truth) {
    nlohmann::json j = {
        {"id", g.id},
        {"bbox", {{"x", g.bbox.x}, {"y", g.bbox.y}, {"w", g.bbox.w}, {"h", g.bbox.h}}},
        {"frame_start", g.frame_start},
        {"frame_end", g.frame_end},
    };
    if (!g.text.empty()) j["text"] = g.text;
    doc.push_back(std::move(j));
  }
  return doc;
}

std::vector<GroundTruthRegion> truth_from_json(const nlohmann::json& doc) {
  std::vector<GroundTruthRegion> out;
  try {
    if (!doc.is_array()) throw Error(ErrorCode::DecodeError, "ground truth: expected a JSON array");
    for (const auto& j : doc) {
      GroundTruthRegion g;
      g.id = j.at("id").get<std::string>();
      const auto& b = j.at("bbox");
      g.bbox = {b.at("x").get<int>(), b.at("y").get<int>(), b.at("w").get<int>(), b.at("h").get<int>()};
      g.frame_start = j.at("frame_start").get<std::size_t>();
      g.frame_end = j.at("frame_end").get<std::size_t>();
      g.text = j.value("text", std::string{});
      if (g.frame_start > g.frame_end) throw Error(ErrorCode::DecodeError, "ground truth " + g.id + ": frame_start > frame_end");
      if (g.bbox.w < 1 || g.bbox.h < 1) throw Error(ErrorCode::DecodeError, "ground truth " + g.id + ": empty bbox");
      out.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::DecodeError, std::string("ground truth: ") + e.what());
  }
  return out;
}

std::vector<GroundTruthRegion> load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::DecodeError, path.string() + ": " + e.what());
  }
  return truth_from_json(doc);
}

}  // namespace vtext
