#include "vtext/config.hpp"

#include <fstream>
#include <string>

namespace vtext {

void PipelineConfig::validate() const {
  auto fail = [](const char* key, const char* why) {
    throw Error(ErrorCode::InvalidConfig, std::string(key) + ": " + why);
  };
  if (!(theta >= 0.0 && theta <= 2.0)) fail("theta", "must be within [0, 2]");
  if (!(localize.split_threshold >= 0.0 && localize.split_threshold <= 1.0)) {
    fail("split_threshold", "must be within [0, 1]");
  }
  if (localize.min_block < 1) fail("min_block", "must be >= 1");
  if (!(localize.density_tol >= 0.0)) fail("density_tol", "must be >= 0");
  if (!(localize.density_floor >= 0.0 && localize.density_floor <= 1.0)) {
    fail("density_floor", "must be within [0, 1]");
  }
  if (!(localize.line_gap >= 0.0)) fail("line_gap", "must be >= 0");
  filter.validate();
}

namespace {

const char* mode_name(TemporalMode m) { return m == TemporalMode::FixedBox ? "fixed_box" : "relocalize"; }

template <class T>
T read_value(const nlohmann::json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) throw Error(ErrorCode::InvalidConfig, key + ": expected an integer");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidConfig, key + ": expected a number");
    }
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::InvalidConfig, key + ": wrong type");
  }
}

}  // namespace

nlohmann::json to_json(const PipelineConfig& cfg) {
  nlohmann::json j;
  j["theta"] = cfg.theta;
  j["split_threshold"] = cfg.localize.split_threshold;
  j["min_block"] = cfg.localize.min_block;
  j["density_tol"] = cfg.localize.density_tol;
  j["density_floor"] = cfg.localize.density_floor;
  j["line_gap"] = cfg.localize.line_gap;
  j["sigma"] = cfg.filter.sigma;
  j["window"] = cfg.filter.window_n;
  j["shift"] = cfg.filter.shift_k;
  j["min_area"] = cfg.filter.min_area;
  j["min_width"] = cfg.filter.min_width;
  j["min_height"] = cfg.filter.min_height;
  j["match_pos_tol"] = cfg.filter.match_tol_pos;
  j["match_density_tol"] = cfg.filter.match_tol_density;
  j["temporal_mode"] = mode_name(cfg.filter.temporal_mode);
  return j;
}

PipelineConfig apply_config(const PipelineConfig& base, const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidConfig, "config: expected a JSON object");
  PipelineConfig cfg = base;
  for (const auto& [key, v] : doc.items()) {
    if (key == "theta") cfg.theta = read_value<double>(v, key);
    else if (key == "split_threshold") cfg.localize.split_threshold = read_value<double>(v, key);
    else if (key == "min_block") cfg.localize.min_block = read_value<int>(v, key);
    else if (key == "density_tol") cfg.localize.density_tol = read_value<double>(v, key);
    else if (key == "density_floor") cfg.localize.density_floor = read_value<double>(v, key);
    else if (key == "line_gap") cfg.localize.line_gap = read_value<double>(v, key);
    else if (key == "sigma") cfg.filter.sigma = read_value<int>(v, key);
    else if (key == "window") cfg.filter.window_n = read_value<int>(v, key);
    else if (key == "shift") cfg.filter.shift_k = read_value<int>(v, key);
    else if (key == "min_area") cfg.filter.min_area = read_value<int>(v, key);
    else if (key == "min_width") cfg.filter.min_width = read_value<int>(v, key);
    else if (key == "min_height") cfg.filter.min_height = read_value<int>(v, key);
    else if (key == "match_pos_tol") cfg.filter.match_tol_pos = read_value<int>(v, key);
    else if (key == "match_density_tol") cfg.filter.match_tol_density = read_value<double>(v, key);
    else if (key == "temporal_mode") {
      const auto mode = read_value<std::string>(v, key);
      if (mode == "relocalize") cfg.filter.temporal_mode = TemporalMode::Relocalize;
      else if (mode == "fixed_box") cfg.filter.temporal_mode = TemporalMode::FixedBox;
      else throw Error(ErrorCode::InvalidConfig, key + ": expected relocalize or fixed_box");
    } else {
      throw Error(ErrorCode::InvalidConfig, key + ": unknown key");
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::optional<std::filesystem::path>& file, const nlohmann::json& overrides) {
  PipelineConfig cfg;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw Error(ErrorCode::IoError, "cannot read config " + file->string());
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidConfig, file->string() + ": " + e.what());
    }
    cfg = apply_config(cfg, doc);
  }
  cfg = apply_config(cfg, overrides);
  cfg.validate();
  return cfg;
}

}  // namespace vtext
