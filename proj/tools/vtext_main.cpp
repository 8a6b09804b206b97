// vtext: detect / eval / synth front end.
//
// Exit codes: 0 success, 1 eval --assert-* threshold missed, 2 usage, I/O or
// configuration error (one-line diagnostic on stderr).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vtext/config.hpp"
#include "vtext/evaluation.hpp"
#include "vtext/kernels.hpp"
#include "vtext/pipeline.hpp"
#include "vtext/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

int fail(const std::string& message) {
  std::cerr << "vtext: " << message << '\n';
  return kExitError;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw vtext::Error(vtext::ErrorCode::IoError, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw vtext::Error(vtext::ErrorCode::DecodeError, path.string() + ": " + e.what());
  }
}

void write_json(const std::optional<fs::path>& path, const json& doc) {
  if (!path) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(*path);
  if (!out) throw vtext::Error(vtext::ErrorCode::IoError, "cannot write " + path->string());
  out << doc.dump(2) << '\n';
  if (!out) throw vtext::Error(vtext::ErrorCode::IoError, "cannot write " + path->string());
}

struct DetectArgs {
  std::string frames;
  std::optional<fs::path> out;
  std::optional<fs::path> overlay_dir;
  std::optional<fs::path> config;
  std::optional<fs::path> dump_edges;
  std::optional<fs::path> dump_quadtree;
  double frame_rate = 25.0;
  int jobs = 0;
  bool verbose = false;

  std::optional<double> theta, split_threshold, density_tol, density_floor, line_gap, match_density_tol;
  std::optional<int> min_block, sigma, window, shift, min_area, min_width, min_height, match_pos_tol;
  std::optional<std::string> temporal_mode;

  json overrides() const {
    json o = json::object();
    auto put = [&](const char* key, const auto& v) {
      if (v) o[key] = *v;
    };
    put("theta", theta);
    put("split_threshold", split_threshold);
    put("min_block", min_block);
    put("density_tol", density_tol);
    put("density_floor", density_floor);
    put("line_gap", line_gap);
    put("sigma", sigma);
    put("window", window);
    put("shift", shift);
    put("min_area", min_area);
    put("min_width", min_width);
    put("min_height", min_height);
    put("match_pos_tol", match_pos_tol);
    put("match_density_tol", match_density_tol);
    put("temporal_mode", temporal_mode);
    return o;
  }
};

struct EvalArgs {
  fs::path detections;
  fs::path truth;
  std::optional<fs::path> out;
  double iou = 0.5;
  int temporal_overlap = 1;
  std::optional<double> assert_over_truth;
  std::optional<double> assert_over_detected;
  std::optional<double> assert_false_alarm;
};

struct SynthArgs {
  fs::path spec;
  fs::path out;
  std::optional<std::uint64_t> seed;
};

int run_detect(const DetectArgs& a) {
  if (a.jobs > 0) vtext::kernels::set_worker_count(a.jobs);
  const auto cfg = vtext::load_config(a.config, a.overrides());
  const auto seq = vtext::open_sequence(a.frames, a.frame_rate);
  if (a.verbose) {
    std::cerr << "vtext: " << seq.count() << " frames " << seq.width() << "x" << seq.height() << " from "
              << seq.source() << '\n';
  }

  vtext::PipelineOptions options;
  options.dump_edges_dir = a.dump_edges;
  options.dump_quadtree_dir = a.dump_quadtree;
  if (a.verbose) {
    options.progress = [](std::size_t done, std::size_t total) {
      if (done % 100 == 0 || done == total) std::cerr << "vtext: pair " << done << "/" << total << '\n';
    };
  }
  const auto run = vtext::process_sequence(seq, cfg, options);
  write_json(a.out, vtext::to_json(run));

  if (a.overlay_dir) {
    const auto written = vtext::render_overlays(run, seq, *a.overlay_dir);
    if (a.verbose) std::cerr << "vtext: wrote " << written << " overlay image(s)\n";
  }
  if (a.verbose) {
    std::cerr << "vtext: " << run.confirmed().size() << " confirmed region(s), " << run.pairs_triggered << "/"
              << run.pairs_processed << " pairs triggered, " << run.elapsed_seconds << " s\n";
  }
  return kExitOk;
}

int run_eval(const EvalArgs& a) {
  if (!(a.iou > 0.0 && a.iou <= 1.0)) throw vtext::Error(vtext::ErrorCode::InvalidConfig, "iou: must be within (0, 1]");
  const auto run = vtext::run_from_json(read_json(a.detections));
  const auto truth = vtext::truth_from_json(read_json(a.truth));
  const auto detected = run.confirmed();
  const auto report = vtext::evaluate(detected, truth, a.iou, a.temporal_overlap);
  write_json(a.out, vtext::to_json(report));

  bool ok = true;
  if (a.assert_over_truth && !(report.ratio_over_truth && *report.ratio_over_truth >= *a.assert_over_truth)) ok = false;
  if (a.assert_over_detected && !(report.ratio_over_detected && *report.ratio_over_detected >= *a.assert_over_detected)) {
    ok = false;
  }
  if (a.assert_false_alarm && report.false_alarm && *report.false_alarm > *a.assert_false_alarm) ok = false;
  if (!ok) {
    std::cerr << "vtext: evaluation below asserted thresholds\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int run_synth(const SynthArgs& a) {
  auto spec = vtext::clip_spec_from_json(read_json(a.spec));
  if (a.seed) spec.seed = *a.seed;
  vtext::write_synthetic_clip(spec, a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static caption detection in frame sequences"};
  app.require_subcommand(1);

  DetectArgs detect;
  auto* d = app.add_subcommand("detect", "Detect static superimposed text regions");
  d->add_option("--frames", detect.frames, "Frame directory, glob, or JSON manifest")->required();
  d->add_option("--out", detect.out, "Run report JSON (default: stdout)");
  d->add_option("--overlay-dir", detect.overlay_dir, "Write frames with confirmed boxes drawn");
  d->add_option("--config", detect.config, "JSON config file");
  d->add_option("--theta", detect.theta, "Histogram-difference trigger threshold");
  d->add_option("--split-threshold", detect.split_threshold, "Quadtree split density threshold T");
  d->add_option("--min-block", detect.min_block, "Smallest quadtree block side, pixels");
  d->add_option("--density-tol", detect.density_tol, "Merge density tolerance");
  d->add_option("--density-floor", detect.density_floor, "Merge density floor");
  d->add_option("--line-gap", detect.line_gap, "Line grouping gap in text heights (0 disables)");
  d->add_option("--sigma", detect.sigma, "Minimal contrast-peak distance, gray levels");
  d->add_option("--window", detect.window, "Temporal window N, frames");
  d->add_option("--shift", detect.shift, "Temporal stride K, frames");
  d->add_option("--min-area", detect.min_area, "Minimal region area, pixels");
  d->add_option("--min-width", detect.min_width, "Minimal region width, pixels");
  d->add_option("--min-height", detect.min_height, "Minimal region height, pixels");
  d->add_option("--match-pos-tol", detect.match_pos_tol, "Temporal match position/size tolerance, pixels");
  d->add_option("--match-density-tol", detect.match_density_tol, "Temporal match density tolerance");
  d->add_option("--temporal-mode", detect.temporal_mode, "relocalize or fixed_box");
  d->add_option("--frame-rate", detect.frame_rate, "Nominal frame rate");
  d->add_option("--jobs", detect.jobs, "Worker threads (default: logical cores)");
  d->add_option("--dump-edges", detect.dump_edges, "Write per-pair edge/binary/difference PGMs");
  d->add_option("--dump-quadtree", detect.dump_quadtree, "Write per-pair quadtree leaf images");
  d->add_flag("-v,--verbose", detect.verbose, "Progress on stderr");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Score a run report against ground truth");
  e->add_option("--detections", eval.detections, "Run report JSON from detect")->required();
  e->add_option("--truth", eval.truth, "Ground-truth JSON")->required();
  e->add_option("--out", eval.out, "Report JSON (default: stdout)");
  e->add_option("--iou", eval.iou, "Minimal IoU for a correct detection");
  e->add_option("--temporal-overlap", eval.temporal_overlap, "Minimal temporal overlap, frames");
  e->add_option("--assert-over-truth", eval.assert_over_truth, "Exit 1 if correct/ground_truth is below this");
  e->add_option("--assert-over-detected", eval.assert_over_detected, "Exit 1 if correct/detected is below this");
  e->add_option("--assert-false-alarm", eval.assert_false_alarm, "Exit 1 if false alarm rate exceeds this");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Render a synthetic captioned clip with ground truth");
  s->add_option("--spec", synth.spec, "Clip spec JSON")->required();
  s->add_option("--out", synth.out, "Output directory")->required();
  s->add_option("--seed", synth.seed, "Override the seed in the clip spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& h) {
    return app.exit(h);
  } catch (const CLI::CallForAllHelp& h) {
    return app.exit(h);
  } catch (const CLI::ParseError& pe) {
    return fail(pe.what());
  }

  try {
    if (*d) return run_detect(detect);
    if (*e) return run_eval(eval);
    if (*s) return run_synth(synth);
  } catch (const vtext::Error& err) {
    return fail(err.what());
  } catch (const std::exception& err) {
    return fail(std::string("IoError: ") + err.what());
  }
  return kExitError;
}
