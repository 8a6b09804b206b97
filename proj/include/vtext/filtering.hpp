#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "vtext/frame_io.hpp"
#include "vtext/geometry.hpp"
#include "vtext/kernels.hpp"
#include "vtext/localize.hpp"
#include "vtext/quadtree.hpp"

namespace vtext {

enum class TemporalMode {
  Relocalize,  // re-run split/merge on every (reference, j) pair
  FixedBox,    // only re-measure edge density under the candidate's bbox
};

struct FilterConfig {
  int sigma = 110;      // minimal distance between the two dominant gray-level peaks
  int window_n = 50;    // temporal window, frames
  int shift_k = 2;      // stride inside the window
  int min_area = 150;
  int min_width = 8;
  int min_height = 8;
  int match_tol_pos = 4;           // pixels, per coordinate and per dimension
  double match_tol_density = 0.1;
  TemporalMode temporal_mode = TemporalMode::Relocalize;

  // Throws InvalidConfig naming the offending key.
  void validate() const;
};

enum class RegionStatus { Confirmed, RejectedSize, RejectedContrast, RejectedTemporal, Undecided };

std::string_view to_string(RegionStatus s);
std::optional<RegionStatus> parse_status(std::string_view s);

// A region that went through filtering, whatever the outcome. Only Confirmed
// regions are final text regions; their persistence always equals window_n.
struct TextRegion {
  Rect bbox;
  std::size_t first_frame = 0;
  int persistence = 0;  // T_p
  double mean_density = 0.0;
  RegionStatus status = RegionStatus::Undecided;
};

// Keep iff area, width and height reach their floors and width >= height.
bool size_filter(const Rect& bbox, const FilterConfig& cfg);
inline bool size_filter(const CandidateRegion& region, const FilterConfig& cfg) {
  return size_filter(region.bbox, cfg);
}

// Positions of the two most massive local maxima of the 5-bin moving average
// of `histogram` (larger mass first; equal mass goes to the lower level).
// Plateaus count once, at their midpoint.
std::optional<std::pair<int, int>> dominant_peaks(const kernels::HistogramBins& histogram);

// Keep iff the two dominant peaks are more than sigma gray levels apart.
bool contrast_filter(std::span<const std::uint8_t> crop, int sigma);

struct TemporalVerdict {
  RegionStatus status = RegionStatus::Undecided;
  int persistence = 0;
};

// Candidate matcher used by the window checks.
bool same_region(const CandidateRegion& a, const CandidateRegion& b, const FilterConfig& cfg);

// Probes the frames reference+K, reference+2K, ..., reference+N. `probe(j)`
// returns the localization of the pair (reference, j). Persistence grows by
// K per matching check; the first miss ends the scan. A window running past
// the last frame yields Undecided without probing.
TemporalVerdict temporal_filter(const CandidateRegion& region, std::size_t reference_index,
                                std::size_t sequence_count, const FilterConfig& cfg,
                                const std::function<const LocalizedPair&(std::size_t)>& probe);

// Convenience form that maps and localizes straight from the sequence.
TemporalVerdict temporal_filter(const CandidateRegion& region, const FrameSequence& seq,
                                std::size_t reference_index, const FilterConfig& filter,
                                const LocalizeConfig& localize_cfg);

}  // namespace vtext
