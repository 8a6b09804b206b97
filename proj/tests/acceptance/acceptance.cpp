// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"
#include "vtext/change_detect.hpp"
#include "vtext/edgemap.hpp"
#include "vtext/evaluation.hpp"
#include "vtext/kernels.hpp"
#include "vtext/pipeline.hpp"
#include "vtext/quadtree.hpp"
#include "vtext/synth.hpp"

using namespace vtext;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

template <class Fn>
Outcome guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

// 1. histogram difference vs per-level recount
Outcome histogram_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const int w = 8 + static_cast<int>(rng() % 57);
    const int h = 8 + static_cast<int>(rng() % 57);
    const int levels = 1 + static_cast<int>(rng() % 256);
    const auto a = oracle::random_frame(rng, w, h, levels);
    const auto b = oracle::random_frame(rng, w, h, 1 + static_cast<int>(rng() % 256));
    const double got = histogram_difference(a, b);
    const double want = oracle::histogram_difference(a, b);
    const double rel = want == 0.0 ? std::abs(got) : std::abs(got - want) / want;
    worst = std::max(worst, rel);
    failures += rel > 1e-12;
  }
  const double elapsed = seconds_since(t0);
  return {failures == 0 && elapsed < 5.0,
          format("200 pairs, %d over 1e-12, max rel err %.3g, %.2f s (limit 5 s)", failures, worst, elapsed)};
}

// 2. optimal threshold vs exhaustive within-class search
Outcome otsu_oracle() {
  std::mt19937_64 rng(202);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    kernels::HistogramBins h{};
    switch (i % 4) {
      case 0:  // dense uniform counts
        for (auto& b : h) b = rng() % 1000;
        break;
      case 1:  // a handful of occupied levels, frequent ties
        for (int k = 0; k < 2 + static_cast<int>(rng() % 5); ++k) h[rng() % 256] = 1 + rng() % 4;
        break;
      case 2: {  // two noisy modes
        const int a = static_cast<int>(rng() % 128);
        const int b = 128 + static_cast<int>(rng() % 128);
        for (int k = 0; k < 4000; ++k) {
          const int c = k % 2 ? a : b;
          ++h[std::clamp(c + static_cast<int>(rng() % 41) - 20, 0, 255)];
        }
        break;
      }
      default:  // sparse with huge counts
        for (int k = 0; k < 20; ++k) h[rng() % 256] = rng() % 100000000;
        break;
    }
    mismatches += optimal_threshold(h) != oracle::otsu_within_class(h);
  }
  return {mismatches == 0, format("100 histograms, %d mismatches", mismatches)};
}

// 3. quadtree tiling and stopping condition
std::size_t structure_violations(const QuadBlock& b, double t, int min_size) {
  if (b.terminal()) return !(b.density <= t || b.rect.w < 2 * min_size || b.rect.h < 2 * min_size);
  std::size_t bad = (b.rect.w < 2 * min_size || b.rect.h < 2 * min_size) + (b.children.size() != 4);
  for (const auto& c : b.children) bad += structure_violations(c, t, min_size);
  return bad;
}

Outcome quadtree_invariants() {
  std::mt19937_64 rng(303);
  std::size_t violations = 0;
  std::size_t leaves_total = 0;
  for (int i = 0; i < 100; ++i) {
    const int w = 1 + static_cast<int>(rng() % 256);
    const int h = 1 + static_cast<int>(rng() % 256);
    const double t = static_cast<double>(rng() % 1000) / 2000.0;
    const int min_size = 1 + static_cast<int>(rng() % 16);
    const auto f = oracle::random_binary(rng, w, h, static_cast<double>(rng() % 100) / 400.0,
                                         static_cast<int>(rng() % 5));
    const auto root = split(f, t, min_size);
    std::vector<Rect> rects;
    for (const auto& l : collect_leaves(root)) {
      rects.push_back(l.rect);
      violations += std::abs(l.density - oracle::density(f, l.rect)) > 1e-12;
    }
    leaves_total += rects.size();
    violations += oracle::tiling_violations(rects, w, h);
    violations += structure_violations(root, t, min_size);
  }
  return {violations == 0, format("100 frames, %zu leaves, %zu violations", leaves_total, violations)};
}

// 4. Sobel step, constant and transpose checks
Outcome sobel_checks() {
  std::size_t bad = 0;
  Frame step(0, 64, 48);
  for (int y = 0; y < 48; ++y) {
    for (int x = 32; x < 64; ++x) step.at(x, y) = 255;
  }
  const auto e = sobel_edge_map(step);
  for (int y = 1; y < 47; ++y) bad += (e.at(31, y) != 1020.0f) + (e.at(32, y) != 1020.0f);
  for (int v : {0, 17, 128, 255}) {
    for (float m : sobel_edge_map(Frame(0, 40, 30, static_cast<std::uint8_t>(v))).magnitudes) bad += m != 0.0f;
  }
  std::mt19937_64 rng(404);
  for (int i = 0; i < 50; ++i) {
    const int w = 3 + static_cast<int>(rng() % 80);
    const int h = 3 + static_cast<int>(rng() % 80);
    const auto f = oracle::random_frame(rng, w, h);
    const auto a = sobel_edge_map(f);
    const auto b = sobel_edge_map(oracle::transpose(f));
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) bad += a.at(x, y) != b.at(y, x);
    }
  }
  return {bad == 0, format("step 1020 on 92 pixels, 4 constant frames, 50 transposes: %zu mismatches", bad)};
}

// 6 and 7 run the pipeline; their reports also feed criterion 5.
struct CorpusResult {
  std::size_t detected = 0;
  std::size_t correct = 0;
  std::size_t truth = 0;
  std::vector<EvalReport> reports;
  double seconds = 0.0;
};

CorpusResult run_corpus(const std::vector<ClipSpec>& specs) {
  CorpusResult out;
  const auto t0 = Clock::now();
  for (const auto& spec : specs) {
    const auto clip = generate_synthetic_clip(spec);
    const auto run = process_sequence(clip.frames, PipelineConfig{});
    const auto confirmed = run.confirmed();
    auto report = evaluate(confirmed, clip.truth, 0.5);
    out.detected += report.detected;
    out.correct += report.correct;
    out.truth += report.ground_truth;
    out.reports.push_back(std::move(report));
  }
  out.seconds = seconds_since(t0);
  return out;
}

Outcome complementarity(const std::vector<EvalReport>& pipeline_reports) {
  std::vector<EvalReport> reports = pipeline_reports;
  std::mt19937_64 rng(505);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t detected = rng() % 5000;
    const std::size_t truth = rng() % 5000;
    const std::size_t correct = std::min(detected, truth) == 0 ? 0 : rng() % (std::min(detected, truth) + 1);
    reports.push_back(compute_metrics(std::vector<RegionMatch>(correct), detected, truth));
  }
  std::size_t checked = 0;
  double worst = 0.0;
  for (const auto& r : reports) {
    if (r.detected == 0) continue;
    ++checked;
    worst = std::max(worst, std::abs(*r.ratio_over_detected + *r.false_alarm - 1.0));
  }
  return {worst <= 1e-12, format("%zu runs with detections, max |sum - 1| = %.3g (limit 1e-12)", checked, worst)};
}

Outcome detection_quality(const CorpusResult& r) {
  const double over_truth = r.truth ? static_cast<double>(r.correct) / r.truth : 0.0;
  const double over_detected = r.detected ? static_cast<double>(r.correct) / r.detected : 0.0;
  return {over_truth >= 0.85 && over_detected >= 0.85,
          format("20 clips: truth %zu, detected %zu, correct %zu; over_truth %.3f, over_detected %.3f (min 0.85 "
                 "at IoU 0.5), %.1f s",
                 r.truth, r.detected, r.correct, over_truth, over_detected, r.seconds)};
}

Outcome negative_control(const CorpusResult& r) {
  return {r.detected <= 1, format("10 caption-free clips: %zu confirmed (max 1), %.1f s", r.detected, r.seconds)};
}

// 8. single-worker throughput over 1000-frame clips
Outcome throughput() {
  const int saved = kernels::worker_count();
  kernels::set_worker_count(1);
  const auto busy = generate_synthetic_clip(testing::throughput_clip(1000));
  PipelineConfig every_pair;
  every_pair.theta = 0.0;
  const auto triggered = process_sequence(busy.frames, every_pair);
  const double triggered_rate = triggered.pairs_triggered / triggered.elapsed_seconds;

  const auto quiet = generate_synthetic_clip(testing::static_caption_clip(1000, 0));
  const auto scan = process_sequence(quiet.frames, PipelineConfig{});
  const double scan_rate = scan.pairs_processed / scan.elapsed_seconds;
  kernels::set_worker_count(saved);

  const bool pass = triggered.pairs_triggered == triggered.pairs_processed && scan.pairs_triggered == 0 &&
                    triggered_rate >= 2.0 && scan_rate >= 25.0;
  return {pass, format("1 worker, 352x288: triggered %zu/%zu pairs at %.1f pairs/s (min 2); untriggered %zu/%zu "
                       "pairs at %.1f pairs/s (min 25)",
                       triggered.pairs_triggered, triggered.pairs_processed, triggered_rate, scan.pairs_triggered,
                       scan.pairs_processed, scan_rate)};
}

// 9. two runs, byte-identical JSON without the elapsed field
Outcome determinism() {
  const auto clip = generate_synthetic_clip(testing::detection_corpus()[7]);
  const auto a = to_json(process_sequence(clip.frames, PipelineConfig{}), false).dump();
  const auto b = to_json(process_sequence(clip.frames, PipelineConfig{}), false).dump();
  return {a == b, format("%zu-byte report, runs %s", a.size(), a == b ? "identical" : "differ")};
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, Outcome>> results;
  results.emplace_back("histogram difference oracle", guarded(histogram_oracle));
  results.emplace_back("optimal threshold oracle", guarded(otsu_oracle));
  results.emplace_back("quadtree invariants", guarded(quadtree_invariants));
  results.emplace_back("sobel correctness", guarded(sobel_checks));

  CorpusResult positives;
  CorpusResult negatives;
  std::string corpus_error;
  try {
    positives = run_corpus(testing::detection_corpus());
    negatives = run_corpus(testing::negative_corpus());
  } catch (const std::exception& e) {
    corpus_error = std::string("exception: ") + e.what();
  }
  auto reports = positives.reports;
  reports.insert(reports.end(), negatives.reports.begin(), negatives.reports.end());
  auto unless_failed = [&](Outcome o) { return corpus_error.empty() ? o : Outcome{false, corpus_error}; };
  results.emplace_back("ratio_over_detected + false_alarm == 1",
                       unless_failed(guarded([&] { return complementarity(reports); })));
  results.emplace_back("synthetic detection quality", unless_failed(detection_quality(positives)));
  results.emplace_back("negative control", unless_failed(negative_control(negatives)));
  results.emplace_back("throughput", guarded(throughput));
  results.emplace_back("determinism", guarded(determinism));

  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, outcome] = results[i];
    std::printf("%s %zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, name, outcome.detail.c_str());
    failed += !outcome.pass;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
