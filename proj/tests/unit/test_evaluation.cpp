#include <random>

#include <doctest.h>

#include "vtext/evaluation.hpp"

using namespace vtext;

namespace {

TextRegion det(Rect box, std::size_t first = 10, int persistence = 50) {
  TextRegion r;
  r.bbox = box;
  r.first_frame = first;
  r.persistence = persistence;
  r.status = RegionStatus::Confirmed;
  return r;
}

GroundTruthRegion gt(std::string id, Rect box, std::size_t start = 10, std::size_t end = 99) {
  return {std::move(id), box, start, end, ""};
}

}  // namespace

TEST_CASE("identical sets match perfectly") {
  const std::vector<TextRegion> d{det({0, 0, 40, 10}), det({100, 100, 60, 12})};
  const std::vector<GroundTruthRegion> t{gt("a", {0, 0, 40, 10}), gt("b", {100, 100, 60, 12})};
  const auto m = match_regions(d, t, 0.5);
  REQUIRE(m.size() == 2);
  for (const auto& x : m) CHECK(x.iou == 1.0);
  const auto r = evaluate(d, t);
  CHECK(*r.ratio_over_detected == 1.0);
  CHECK(*r.ratio_over_truth == 1.0);
  CHECK(*r.false_alarm == 0.0);
}

TEST_CASE("low IoU does not match") {
  // overlap 60x10 = 600 over a union of 2000
  const Rect truth{0, 0, 130, 10};
  const Rect shifted{70, 0, 130, 10};
  CHECK(iou(truth, shifted) == doctest::Approx(0.3));
  const std::vector<TextRegion> d{det(shifted)};
  const std::vector<GroundTruthRegion> t{gt("a", truth)};
  CHECK(match_regions(d, t, 0.5).empty());
  CHECK(match_regions(d, t, 0.3).size() == 1);
}

TEST_CASE("matching is one-to-one") {
  const std::vector<TextRegion> d{det({0, 0, 40, 10}), det({1, 0, 40, 10})};
  const std::vector<GroundTruthRegion> t{gt("a", {1, 0, 40, 10})};
  const auto m = match_regions(d, t, 0.5);
  REQUIRE(m.size() == 1);
  CHECK(m[0].detection == 1);  // the higher-IoU one wins
  CHECK(m[0].truth_id == "a");
}

TEST_CASE("temporal overlap is required") {
  const std::vector<TextRegion> d{det({0, 0, 40, 10}, 100, 50)};  // frames 100..149
  CHECK(match_regions(d, std::vector{gt("a", {0, 0, 40, 10}, 0, 99)}, 0.5).empty());
  CHECK(match_regions(d, std::vector{gt("a", {0, 0, 40, 10}, 0, 100)}, 0.5).size() == 1);
  CHECK(match_regions(d, std::vector{gt("a", {0, 0, 40, 10}, 0, 100)}, 0.5, 2).empty());
  CHECK(match_regions(d, std::vector{gt("a", {0, 0, 40, 10}, 149, 300)}, 0.5).size() == 1);
}

TEST_CASE("compute_metrics arithmetic") {
  std::vector<RegionMatch> nine(9);
  const auto r = compute_metrics(nine, 10, 10);
  CHECK(r.correct == 9);
  CHECK(*r.ratio_over_detected == doctest::Approx(0.9));
  CHECK(*r.ratio_over_truth == doctest::Approx(0.9));
  CHECK(*r.false_alarm == doctest::Approx(0.1));

  const auto perfect = compute_metrics(std::vector<RegionMatch>(5), 5, 5);
  CHECK(*perfect.ratio_over_detected == 1.0);
  CHECK(*perfect.ratio_over_truth == 1.0);
  CHECK(*perfect.false_alarm == 0.0);
}

TEST_CASE("undefined ratios are flagged, not zero") {
  const auto none = compute_metrics({}, 0, 3);
  CHECK_FALSE(none.ratio_over_detected.has_value());
  CHECK_FALSE(none.false_alarm.has_value());
  CHECK(*none.ratio_over_truth == 0.0);
  const auto doc = to_json(none);
  CHECK(doc["ratio_over_detected"].is_null());
  CHECK(doc["undefined"].size() == 2);

  const auto empty_truth = compute_metrics({}, 2, 0);
  CHECK_FALSE(empty_truth.ratio_over_truth.has_value());
  CHECK(*empty_truth.false_alarm == 1.0);
}

TEST_CASE("report exposes both labelings") {
  const auto r = compute_metrics(std::vector<RegionMatch>(3), 4, 6);
  const auto doc = to_json(r);
  CHECK(doc["paper_labels"]["recall"] == doc["ratio_over_detected"]);
  CHECK(doc["paper_labels"]["precision"] == doc["ratio_over_truth"]);
  CHECK(doc["conventional_labels"]["precision"] == doc["ratio_over_detected"]);
  CHECK(doc["conventional_labels"]["recall"] == doc["ratio_over_truth"]);
  CHECK(doc["counts"]["detected"] == 4);
}

TEST_CASE("metric properties on random region sets") {
  std::mt19937_64 rng(17);
  auto rect = [&] {
    return Rect{static_cast<int>(rng() % 300), static_cast<int>(rng() % 250), 10 + static_cast<int>(rng() % 60),
                5 + static_cast<int>(rng() % 20)};
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GroundTruthRegion> t;
    std::vector<TextRegion> d;
    const int nt = static_cast<int>(rng() % 6);
    for (int i = 0; i < nt; ++i) {
      t.push_back(gt("t" + std::to_string(i), rect()));
      if (rng() % 3) {
        Rect b = t.back().bbox;
        b.x += static_cast<int>(rng() % 5);
        d.push_back(det(b));
      }
    }
    const int extra = static_cast<int>(rng() % 3);
    for (int i = 0; i < extra; ++i) d.push_back(det(rect()));

    const auto r = evaluate(d, t);
    REQUIRE(r.correct <= r.detected);
    REQUIRE(r.correct <= r.ground_truth);
    if (r.detected > 0) {
      REQUIRE(std::abs(*r.ratio_over_detected + *r.false_alarm - 1.0) <= 1e-12);
    }

    // relabelled ids match the same pairs
    auto relabelled = t;
    for (auto& g : relabelled) g.id = "x" + g.id;
    const auto m2 = evaluate(d, relabelled);
    REQUIRE(m2.correct == r.correct);
    for (std::size_t i = 0; i < r.matches.size(); ++i) {
      REQUIRE(m2.matches[i].detection == r.matches[i].detection);
      REQUIRE(m2.matches[i].truth == r.matches[i].truth);
    }

    // a spurious far-away detection lowers over_detected, keeps over_truth
    auto more = d;
    more.push_back(det({2000, 2000, 10, 10}));
    const auto r3 = evaluate(more, t);
    REQUIRE(r3.correct == r.correct);
    if (r.ground_truth > 0) REQUIRE(*r3.ratio_over_truth == *r.ratio_over_truth);
    if (r.detected > 0 && r.correct > 0) REQUIRE(*r3.ratio_over_detected < *r.ratio_over_detected);
  }
}

TEST_CASE("ground truth JSON round trip") {
  const std::vector<GroundTruthRegion> t{gt("a", {1, 2, 30, 8}, 5, 60), {"b", {40, 50, 20, 10}, 0, 9, "HELLO"}};
  const auto back = truth_from_json(to_json(t));
  REQUIRE(back.size() == 2);
  CHECK(back[1].id == "b");
  CHECK(back[1].bbox == Rect{40, 50, 20, 10});
  CHECK(back[1].frame_end == 9);
  CHECK(back[1].text == "HELLO");
  CHECK_THROWS_AS(truth_from_json(nlohmann::json::parse(R"([{"id":"a"}])")), Error);
}
