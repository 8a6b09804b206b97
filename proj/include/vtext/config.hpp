#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "vtext/filtering.hpp"
#include "vtext/localize.hpp"

namespace vtext {

struct PipelineConfig {
  double theta = 0.002;  // histogram-difference trigger, d_h > theta
  LocalizeConfig localize;
  FilterConfig filter;

  // Throws InvalidConfig naming the offending key.
  void validate() const;
};

// Flat key set shared by config files and the run report's config block:
// theta, split_threshold, min_block, density_tol, density_floor, line_gap,
// sigma, window, shift, min_area, min_width, min_height, match_pos_tol,
// match_density_tol, temporal_mode.
nlohmann::json to_json(const PipelineConfig& cfg);

// Applies the keys present in `doc` on top of `base`. Unknown keys and
// wrongly typed values raise InvalidConfig. Does not validate ranges.
PipelineConfig apply_config(const PipelineConfig& base, const nlohmann::json& doc);

// defaults < file < overrides, then validated.
PipelineConfig load_config(const std::optional<std::filesystem::path>& file,
                           const nlohmann::json& overrides = nlohmann::json::object());

}  // namespace vtext
