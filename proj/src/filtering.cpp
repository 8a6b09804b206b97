#include "vtext/filtering.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <vector>

#include "vtext/edgemap.hpp"

namespace vtext {

void FilterConfig::validate() const {
  auto fail = [](const char* key, const std::string& why) {
    throw Error(ErrorCode::InvalidConfig, std::string(key) + ": " + why);
  };
  if (sigma < 0 || sigma > 255) fail("sigma", "must be within [0, 255]");
  if (window_n < 1) fail("window", "must be >= 1");
  if (shift_k < 1) fail("shift", "must be >= 1");
  if (window_n % shift_k != 0) {
    fail("shift", "window " + std::to_string(window_n) + " is not a multiple of shift " + std::to_string(shift_k));
  }
  if (min_area < 0) fail("min_area", "must be >= 0");
  if (min_width < 0) fail("min_width", "must be >= 0");
  if (min_height < 0) fail("min_height", "must be >= 0");
  if (match_tol_pos < 0) fail("match_pos_tol", "must be >= 0");
  if (!(match_tol_density >= 0.0 && match_tol_density <= 1.0)) fail("match_density_tol", "must be within [0, 1]");
}

std::string_view to_string(RegionStatus s) {
  switch (s) {
    case RegionStatus::Confirmed: return "confirmed";
    case RegionStatus::RejectedSize: return "rejected_size";
    case RegionStatus::RejectedContrast: return "rejected_contrast";
    case RegionStatus::RejectedTemporal: return "rejected_temporal";
    case RegionStatus::Undecided: return "undecided";
  }
  return "undecided";
}

std::optional<RegionStatus> parse_status(std::string_view s) {
  for (auto st : {RegionStatus::Confirmed, RegionStatus::RejectedSize, RegionStatus::RejectedContrast,
                  RegionStatus::RejectedTemporal, RegionStatus::Undecided}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

bool size_filter(const Rect& bbox, const FilterConfig& cfg) {
  return bbox.area() >= cfg.min_area && bbox.w >= cfg.min_width && bbox.h >= cfg.min_height && bbox.w >= bbox.h;
}

std::optional<std::pair<int, int>> dominant_peaks(const kernels::HistogramBins& histogram) {
  // Sums rather than means: the 1/5 factor changes neither order nor ties.
  std::array<std::uint64_t, 256> smooth{};
  for (int k = 0; k < 256; ++k) {
    for (int d = -2; d <= 2; ++d) {
      const int j = k + d;
      if (j >= 0 && j < 256) smooth[k] += histogram[j];
    }
  }

  struct Peak {
    std::uint64_t mass;
    int position;
  };
  std::vector<Peak> peaks;
  int k = 0;
  while (k < 256) {
    int end = k;
    while (end + 1 < 256 && smooth[end + 1] == smooth[k]) ++end;
    const bool left_lower = k == 0 || smooth[k - 1] < smooth[k];
    const bool right_lower = end == 255 || smooth[end + 1] < smooth[k];
    if (smooth[k] > 0 && left_lower && right_lower) peaks.push_back({smooth[k], (k + end) / 2});
    k = end + 1;
  }
  if (peaks.size() < 2) return std::nullopt;
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.mass > b.mass; });
  return std::make_pair(peaks[0].position, peaks[1].position);
}

bool contrast_filter(std::span<const std::uint8_t> crop, int sigma) {
  if (crop.empty()) return false;
  const auto peaks = dominant_peaks(kernels::serial::histogram(crop));
  return peaks && std::abs(peaks->first - peaks->second) > sigma;
}

bool same_region(const CandidateRegion& a, const CandidateRegion& b, const FilterConfig& cfg) {
  const int tol = cfg.match_tol_pos;
  return std::abs(a.bbox.x - b.bbox.x) <= tol && std::abs(a.bbox.y - b.bbox.y) <= tol &&
         std::abs(a.bbox.w - b.bbox.w) <= tol && std::abs(a.bbox.h - b.bbox.h) <= tol &&
         std::abs(a.mean_density - b.mean_density) <= cfg.match_tol_density;
}

TemporalVerdict temporal_filter(const CandidateRegion& region, std::size_t reference_index,
                                std::size_t sequence_count, const FilterConfig& cfg,
                                const std::function<const LocalizedPair&(std::size_t)>& probe) {
  TemporalVerdict v;
  const auto n = static_cast<std::size_t>(cfg.window_n);
  const auto k = static_cast<std::size_t>(cfg.shift_k);
  if (reference_index + n >= sequence_count) {
    v.status = RegionStatus::Undecided;
    return v;
  }

  double baseline = 0.0;
  if (cfg.temporal_mode == TemporalMode::FixedBox) {
    baseline = probe(reference_index + 1).index.density(region.bbox);
  }

  for (std::size_t j = reference_index + k; j <= reference_index + n; j += k) {
    const LocalizedPair& sample = probe(j);
    bool matched = false;
    if (cfg.temporal_mode == TemporalMode::FixedBox) {
      matched = std::abs(sample.index.density(region.bbox) - baseline) <= cfg.match_tol_density;
    } else {
      matched = std::any_of(sample.candidates.begin(), sample.candidates.end(),
                            [&](const CandidateRegion& c) { return same_region(region, c, cfg); });
    }
    if (!matched) break;
    v.persistence += cfg.shift_k;
  }
  v.status = v.persistence == cfg.window_n ? RegionStatus::Confirmed : RegionStatus::RejectedTemporal;
  return v;
}

TemporalVerdict temporal_filter(const CandidateRegion& region, const FrameSequence& seq,
                                std::size_t reference_index, const FilterConfig& filter,
                                const LocalizeConfig& localize_cfg) {
  std::shared_ptr<BinaryEdgeFrame> reference;
  std::map<std::size_t, std::unique_ptr<LocalizedPair>> cache;
  auto probe = [&](std::size_t j) -> const LocalizedPair& {
    auto& slot = cache[j];
    if (!slot) {
      if (!reference) {
        reference = std::make_shared<BinaryEdgeFrame>(map_edges(*seq.at(reference_index)).binary);
      }
      const auto target = map_edges(*seq.at(j)).binary;
      slot = std::make_unique<LocalizedPair>(localize(*reference, target, localize_cfg, reference_index));
    }
    return *slot;
  };
  return temporal_filter(region, reference_index, seq.count(), filter, probe);
}

}  // namespace vtext
