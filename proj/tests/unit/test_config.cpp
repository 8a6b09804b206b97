#include <fstream>

#include <doctest.h>

#include "test_util.hpp"
#include "vtext/config.hpp"

using namespace vtext;

namespace {

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidConfig);
    return e.what();
  }
  FAIL("expected InvalidConfig");
  return {};
}

}  // namespace

TEST_CASE("defaults") {
  const auto cfg = load_config(std::nullopt);
  CHECK(cfg.theta == 0.002);
  CHECK(cfg.localize.split_threshold == 0.005);
  CHECK(cfg.localize.min_block == 8);
  CHECK(cfg.filter.sigma == 110);
  CHECK(cfg.filter.window_n == 50);
  CHECK(cfg.filter.shift_k == 2);
  CHECK(cfg.filter.temporal_mode == TemporalMode::Relocalize);
  CHECK(to_json(cfg) == to_json(PipelineConfig{}));
}

TEST_CASE("flags override the file, the file overrides defaults") {
  test::TempDir dir("cfg");
  std::ofstream(dir / "c.json") << R"({"sigma": 90, "window": 40, "temporal_mode": "fixed_box"})";
  const auto from_file = load_config(dir / "c.json");
  CHECK(from_file.filter.sigma == 90);
  CHECK(from_file.filter.window_n == 40);
  CHECK(from_file.filter.temporal_mode == TemporalMode::FixedBox);

  const auto both = load_config(dir / "c.json", {{"sigma", 110}});
  CHECK(both.filter.sigma == 110);
  CHECK(both.filter.window_n == 40);
}

TEST_CASE("invalid configurations name the key") {
  test::TempDir dir("cfgbad");
  std::ofstream(dir / "c.json") << R"({"window": 50, "shift": 3})";
  CHECK(error_text([&] { load_config(dir / "c.json"); }).find("shift") != std::string::npos);
  CHECK(error_text([] { load_config(std::nullopt, {{"bogus", 1}}); }).find("bogus") != std::string::npos);
  CHECK(error_text([] { load_config(std::nullopt, {{"sigma", "high"}}); }).find("sigma") != std::string::npos);
  CHECK(error_text([] { load_config(std::nullopt, {{"theta", -0.1}}); }).find("theta") != std::string::npos);
  CHECK(error_text([] { load_config(std::nullopt, {{"min_block", 0}}); }).find("min_block") != std::string::npos);
  CHECK(error_text([] { load_config(std::nullopt, {{"temporal_mode", "x"}}); }).find("temporal_mode") !=
        std::string::npos);
}

TEST_CASE("config JSON round trip") {
  PipelineConfig cfg;
  cfg.theta = 0.3;
  cfg.localize.line_gap = 0.0;
  cfg.filter.match_tol_density = 0.2;
  CHECK(to_json(apply_config(PipelineConfig{}, to_json(cfg))) == to_json(cfg));
}
