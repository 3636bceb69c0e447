// Copyright 2026 The rgbtfuse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate. Runs every criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Usage: rgbtfuse_acceptance <path to rgbtfuse>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracle/pooling_oracle.hpp"
#include "rgbtfuse/error.hpp"
#include "rgbtfuse/fusion.hpp"
#include "rgbtfuse/io.hpp"
#include "rgbtfuse/metrics.hpp"
#include "rgbtfuse/report.hpp"
#include "rgbtfuse/simulator.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace rgbtfuse;

namespace
{

using testing::fixture;
using testing::Gen;

std::string config_path(const std::string & name) { return std::string(RGBTFUSE_CONFIGS) + "/" + name; }

// Collects failures inside one criterion.
class Check
{
public:
  void expect(bool ok, const std::string & what)
  {
    ++checks_;
    if (!ok && failures_.size() < 8) {
      failures_.push_back(what);
    }
    failed_ |= !ok;
  }
  void near(double got, double want, double tol, const std::string & what)
  {
    expect(std::abs(got - want) <= tol, fmt::format("{}: got {:.6f}, want {} ± {}", what, got, want, tol));
  }
  void equal(double got, double want, const std::string & what)
  {
    expect(got == want, fmt::format("{}: got {}, want {}", what, got, want));
  }
  void note(std::string s) { notes_.push_back(std::move(s)); }

  bool failed() const { return failed_; }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string> & failures() const { return failures_; }
  const std::vector<std::string> & notes() const { return notes_; }

private:
  bool failed_ = false;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

// Every curve produced anywhere in the run, for the monotonicity criterion.
struct CurveLog
{
  std::vector<std::pair<std::string, Curve>> success;
  std::vector<std::pair<std::string, Curve>> precision;

  void add(const std::string & tag, const BenchmarkScores & s)
  {
    success.emplace_back(tag, s.sr_curve);
    precision.emplace_back(tag, s.pr_curve);
  }
};

CurveLog g_curves;

BenchmarkScores scored(
  const std::string & tag, const DatasetManifest & m, const SequenceResults & r, const MetricConfig & cfg)
{
  BenchmarkScores s = benchmark_scores(m, r, cfg);
  g_curves.add(tag, s);
  return s;
}

ScenarioReport scenario(const std::string & tag, const ScenarioConfig & cfg)
{
  ScenarioReport r = run_scenario(cfg);
  for (const auto & p : r.policies) {
    g_curves.add(tag + "/" + std::string(to_string(p.policy)), p.scores);
  }
  return r;
}

std::string shell_quote(const std::string & s)
{
  std::string out = "'";
  for (char c : s) {
    out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  }
  return out + "'";
}

int run_cli(const std::string & exe, const std::vector<std::string> & args, const fs::path & stdout_file)
{
  std::string cmd = shell_quote(exe);
  for (const auto & a : args) {
    cmd += " " + shell_quote(a);
  }
  cmd += " > " + shell_quote(stdout_file.string()) + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Relative path -> contents for every regular file under `root`.
std::vector<std::pair<std::string, std::string>> snapshot(const fs::path & root)
{
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto & e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out.emplace_back(fs::relative(e.path(), root).string(), read_text_file(e.path()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- criteria ---------------------------------------------------------------

const char * kBench[] = {"GTOT", "RGBT234", "LasHeR", "VTUAV-ST", "MV-RGBT"};

void criterion_pr_indicators(Check & c, const std::string & exe)
{
  const auto t = balanced_indicators(parse_expert_scores_csv(read_text_file(fixture("scores_pr.csv"))));
  const double gf[] = {30.8, 12.6, 16.6, 37.4, 39.3};
  const double gm[] = {24.3, 6.2, 4.2, 32.1, 9.8};
  const double rf[] = {3, 5, 4, 2, 1};
  const double rm[] = {4, 2, 1, 5, 3};
  const double mr[] = {3.5, 3.5, 2.5, 3.5, 2.0};
  c.expect(t.rows.size() == 5, "five benchmark rows");
  for (std::size_t i = 0; i < t.rows.size() && i < 5; ++i) {
    const auto & r = t.rows[i];
    c.expect(r.benchmark == kBench[i], "row order " + r.benchmark);
    c.near(r.gap_fusion, gf[i], 0.3, r.benchmark + " gap_fusion");
    c.near(r.gap_modality, gm[i], 0.1, r.benchmark + " gap_modality");
    c.equal(r.rank_fusion, rf[i], r.benchmark + " rank_fusion");
    c.equal(r.rank_modality, rm[i], r.benchmark + " rank_modality");
    c.equal(r.mrank, mr[i], r.benchmark + " mRank");
  }
  const auto tmp = fs::temp_directory_path() / "rgbtfuse-acceptance-c1.txt";
  const int code = run_cli(
    exe,
    {"analyze", "--input", fixture("scores_pr.csv"), "--expect", "GTOT.mrank=3.5", "--expect", "RGBT234.mrank=3.5",
     "--expect", "LasHeR.mrank=2.5", "--expect", "VTUAV-ST.mrank=3.5", "--expect", "MV-RGBT.mrank=2"},
    tmp);
  c.expect(code == 0, "cli analyze --expect mRank exit code " + std::to_string(code));
  fs::remove(tmp);
  c.note(fmt::format(
    "gap_fusion {:.2f} {:.2f} {:.2f} {:.2f} {:.2f}", t.rows[0].gap_fusion, t.rows[1].gap_fusion,
    t.rows[2].gap_fusion, t.rows[3].gap_fusion, t.rows[4].gap_fusion));
}

void criterion_sr_indicators(Check & c, const std::string & exe)
{
  const auto t = balanced_indicators(parse_expert_scores_csv(read_text_file(fixture("scores_sr.csv"))));
  const double gf[] = {27.6, 16.7, 17.6, 40.4, 40.0};
  const double gm[] = {18.3, 11.1, 5.6, 37.4, 15.3};
  c.expect(t.rows.size() == 5, "five benchmark rows");
  for (std::size_t i = 0; i < t.rows.size() && i < 5; ++i) {
    c.near(t.rows[i].gap_fusion, gf[i], 0.3, t.rows[i].benchmark + " gap_fusion");
    c.near(t.rows[i].gap_modality, gm[i], 0.3, t.rows[i].benchmark + " gap_modality");
  }
  // Ranks 3 and 3 average to 3, not 3.5.
  c.equal(t.rows[3].mrank, 3.0, "VTUAV-ST mRank");
  const auto tmp = fs::temp_directory_path() / "rgbtfuse-acceptance-c2.txt";
  const int code = run_cli(
    exe, {"analyze", "--input", fixture("scores_sr.csv"), "--expect", "VTUAV-ST.mrank=3", "--expect",
          "MV-RGBT.gap_fusion=40.0±0.3"},
    tmp);
  c.expect(code == 0, "cli analyze --expect exit code " + std::to_string(code));
  fs::remove(tmp);
  c.note("VTUAV-ST mRank 3.0 under the shared ranking rule");
}

void criterion_oracle(Check & c)
{
  Gen gen(0x5eed);
  const MetricConfig cfg;
  std::size_t sequences = 0;
  std::size_t mismatches = 0;
  std::size_t comparisons = 0;
  for (int bench = 0; bench < 120; ++bench) {
    oracle::OracleInstance inst;
    std::vector<ManifestEntry> entries;
    SequenceResults results;
    const std::size_t m = gen.index(1, 20);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t t = gen.index(1, 50);
      const double absent_p = gen.real(0.0, 0.5);
      std::vector<FrameTruth> truth;
      std::vector<FramePrediction> pred;
      for (std::size_t i = 0; i < t; ++i) {
        truth.push_back(gen.truth(absent_p));
        pred.push_back(gen.prediction(truth.back(), absent_p));
      }
      const std::string id = fmt::format("b{}s{}", bench, j);
      inst.truth.push_back(truth);
      inst.predictions.push_back(pred);
      results[id] = pred;
      entries.push_back({SequenceAnnotation(id, Subset::Unspecified, truth), id + ".txt"});
      ++sequences;
    }
    const DatasetManifest manifest("random", std::move(entries));
    const auto s = scored("oracle", manifest, results, cfg);
    for (std::size_t k = 0; k < cfg.success_thresholds.size(); ++k) {
      ++comparisons;
      if (s.sr_curve.scores[k] != oracle::brute_force_sr(inst, cfg.success_thresholds[k])) {
        ++mismatches;
      }
    }
    for (std::size_t k = 0; k < cfg.precision_thresholds.size(); ++k) {
      ++comparisons;
      if (s.pr_curve.scores[k] != oracle::brute_force_pr(inst, cfg.precision_thresholds[k])) {
        ++mismatches;
      }
    }
  }
  c.expect(sequences >= 1000, fmt::format("only {} sequences generated", sequences));
  c.expect(mismatches == 0, fmt::format("{} of {} grid points differ from the oracle", mismatches, comparisons));
  c.note(fmt::format("{} sequences, {} grid comparisons, {} mismatches", sequences, comparisons, mismatches));
}

void criterion_absence(Check & c)
{
  const Box b = make_box(10, 10, 40, 40);
  const std::vector<FrameTruth> g = {
    FrameTruth::present(b), FrameTruth::absent(), FrameTruth::present(b), FrameTruth::absent()};
  const std::vector<FramePrediction> p = {
    FramePrediction::present(b), FramePrediction::present(b), FramePrediction::absence_declared(),
    FramePrediction::absence_declared()};
  const char * names[] = {"match", "gt-absent-with-prediction", "gt-present-with-declared-absence",
                          "correct-absence"};
  const int want[] = {1, 0, 0, 1};
  std::string got;
  for (std::size_t i = 0; i < 4; ++i) {
    const int v = frame_success_indicator(g[i], p[i], 0.5) ? 1 : 0;
    got += std::to_string(v);
    c.expect(v == want[i], names[i]);
  }
  const SequenceAnnotation seq("absence", Subset::Unspecified, g);
  c.equal(sequence_score(seq, p, 0.5, ScoreKind::Success, Pooling::FrameIndicator), 0.5, "sequence score");
  c.note("indicators (" + got.substr(0, 1) + ", " + got.substr(1, 1) + ", " + got.substr(2, 1) + ", " +
         got.substr(3, 1) + ")");
}

void criterion_calibrated_selection(Check & c)
{
  Gen gen(0xca11b);
  std::size_t frames = 0;
  std::size_t iou_mismatch = 0;
  std::size_t auc_violations = 0;
  for (int s = 0; s < 200; ++s) {
    ScenarioConfig cfg;
    cfg.sequences = 1;
    cfg.frames = gen.index(20, 120);
    cfg.motion_sigma = gen.real(0.0, 10.0);
    cfg.rgb.degraded_fraction = gen.real(0.0, 1.0);
    cfg.tir.degraded_fraction = gen.real(0.0, 1.0);
    cfg.rgb.informative_noise = gen.real(0.0, 0.2);
    cfg.tir.informative_noise = gen.real(0.0, 0.2);
    const DegradedBehavior behaviors[] = {
      DegradedBehavior::UniformRandomBox, DegradedBehavior::FrozenBox, DegradedBehavior::DriftingBox};
    cfg.rgb.behavior = behaviors[gen.index(0, 2)];
    cfg.tir.behavior = behaviors[gen.index(0, 2)];
    cfg.fused.alpha = gen.real(0.0, 1.0);
    cfg.fused.beta = gen.real(0.0, 0.2);
    cfg.seed = static_cast<std::uint64_t>(s) + 1;
    // Calibrated confidence everywhere.
    cfg.rgb.confidence_noise = 0.0;
    cfg.tir.confidence_noise = 0.0;
    cfg.fused.confidence_noise = 0.0;

    const auto gt = generate_trajectory(cfg, derive_seed(cfg.seed, 1), "cal");
    const auto rgb = degrade_modality(gt, cfg.rgb, cfg.extent, derive_seed(cfg.seed, 2));
    const auto tir = degrade_modality(gt, cfg.tir, cfg.extent, derive_seed(cfg.seed, 3));
    const auto rgbt = synthesize_fused_expert(rgb, tir, gt, cfg.fused, derive_seed(cfg.seed, 4));
    const auto fused = fuse_streams(rgb.stream, tir.stream, rgbt);

    for (std::size_t i = 0; i < gt.size(); ++i) {
      const auto & g = gt.frames()[i];
      const double best = std::max(
        {iou(g, rgb.stream.predictions[i]), iou(g, tir.stream.predictions[i]), iou(g, rgbt.predictions[i])});
      if (iou(g, fused.fused[i]) != best) {
        ++iou_mismatch;
      }
      ++frames;
    }

    const DatasetManifest manifest("cal", {{gt, "cal.txt"}});
    const auto tag = fmt::format("calibrated/{}", s);
    const double f = scored(tag + "/fused", manifest, {{"cal", fused.fused}}, cfg.metric).sr_auc;
    for (const auto * stream : {&rgb.stream, &tir.stream, &rgbt}) {
      const double e = scored(tag + "/expert", manifest, {{"cal", stream->predictions}}, cfg.metric).sr_auc;
      if (f < e) {
        ++auc_violations;
      }
    }
  }
  c.expect(iou_mismatch == 0, fmt::format("{} frames where fused IoU != max expert IoU", iou_mismatch));
  c.expect(auc_violations == 0, fmt::format("{} scenarios where an expert beats the fused SR-AUC", auc_violations));
  c.note(fmt::format("200 scenarios, {} frames, {} IoU mismatches, {} AUC violations", frames, iou_mismatch,
                     auc_violations));
}

void criterion_when_to_fuse(Check & c)
{
  using clock = std::chrono::steady_clock;
  {
    const ScenarioConfig cfg = load_scenario_config(config_path("mmw-one-modality-dead.cfg"));
    c.expect(cfg.sequences == 100 && cfg.frames == 200, "mmw config is 100 x 200");
    c.expect(cfg.rgb.degraded_fraction == 1.0 || cfg.tir.degraded_fraction == 1.0, "one modality fully degraded");
    c.expect(cfg.fused.alpha == 0.5, "alpha 0.5");
    const auto t0 = clock::now();
    const auto r = scenario("mmw", cfg);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const double moe = r.of(Policy::MoeSelection).sr_auc;
    const double fuse = r.of(Policy::AlwaysFuse).sr_auc;
    c.expect(moe - fuse >= 0.05, fmt::format("mmw: moe {:.4f} vs always-fuse {:.4f}", moe, fuse));
    c.expect(secs < 30.0, fmt::format("mmw runtime {:.2f}s", secs));
    const auto again = run_scenario(cfg);
    c.expect(
      export_report(again, ReportFormat::JsonLines) == export_report(r, ReportFormat::JsonLines),
      "mmw deterministic per seed");
    c.note(fmt::format("mmw: moe-selection {:.4f} > always-fuse {:.4f} (margin {:.4f}, {:.2f}s)", moe, fuse,
                       moe - fuse, secs));
  }
  {
    const ScenarioConfig cfg = load_scenario_config(config_path("common-scenario.cfg"));
    c.expect(cfg.rgb.degraded_fraction == 0.0 && cfg.tir.degraded_fraction == 0.0, "common: no degradation");
    c.expect(cfg.rgb.intervals.empty() && cfg.tir.intervals.empty(), "common: no degraded intervals");
    c.expect(cfg.fused.beta == 0.05, "common: beta 0.05");
    const auto t0 = clock::now();
    const auto r = scenario("common", cfg);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const double fuse = r.of(Policy::AlwaysFuse).sr_auc;
    const double single = std::max(r.of(Policy::RgbOnly).sr_auc, r.of(Policy::TirOnly).sr_auc);
    c.expect(fuse >= single, fmt::format("common: always-fuse {:.4f} vs best single {:.4f}", fuse, single));
    c.expect(secs < 30.0, fmt::format("common runtime {:.2f}s", secs));
    const auto again = run_scenario(cfg);
    c.expect(
      export_report(again, ReportFormat::JsonLines) == export_report(r, ReportFormat::JsonLines),
      "common deterministic per seed");
    c.note(fmt::format("common: always-fuse {:.4f} >= best single {:.4f} ({:.2f}s)", fuse, single, secs));
  }
}

void criterion_monotone(Check & c)
{
  // A few extra evaluations in literal pooling so both modes are covered.
  const auto m = load_manifest(fixture("toy/toy.manifest"));
  MetricConfig literal;
  literal.pooling = Pooling::LiteralEq1;
  for (const char * dir : {"toy/results", "toy/perfect"}) {
    const auto r = load_results(fixture(dir), m);
    scored(std::string(dir) + "/frame", m, r, MetricConfig{});
    scored(std::string(dir) + "/literal", m, r, literal);
  }
  std::size_t violations = 0;
  for (const auto & [tag, curve] : g_curves.success) {
    for (std::size_t k = 1; k < curve.scores.size(); ++k) {
      if (curve.scores[k] > curve.scores[k - 1]) {
        ++violations;
        c.expect(false, "success curve rises in " + tag);
      }
    }
  }
  for (const auto & [tag, curve] : g_curves.precision) {
    for (std::size_t k = 1; k < curve.scores.size(); ++k) {
      if (curve.scores[k] < curve.scores[k - 1]) {
        ++violations;
        c.expect(false, "precision curve falls in " + tag);
      }
    }
  }
  c.expect(!g_curves.success.empty(), "no curves were recorded");
  c.note(fmt::format(
    "{} success and {} precision curves, {} violations", g_curves.success.size(), g_curves.precision.size(),
    violations));
}

void criterion_selection_ratios(Check & c, const std::string & exe)
{
  const auto rgb = load_expert_stream(Expert::Rgb, fixture("fuse12/rgb.txt"));
  const auto tir = load_expert_stream(Expert::Tir, fixture("fuse12/tir.txt"));
  const auto rgbt = load_expert_stream(Expert::Rgbt, fixture("fuse12/rgbt.txt"));
  c.expect(rgb.size() == 100, "fixture has 100 frames");
  const auto fused = fuse_streams(rgb, tir, rgbt);
  const auto r = selection_ratios(fused.trace);
  std::size_t rgbt_wins = 0;
  std::size_t tir_wins = 0;
  for (const auto & rec : fused.trace.records()) {
    rgbt_wins += rec.chosen == Expert::Rgbt ? 1 : 0;
    tir_wins += rec.chosen == Expert::Tir ? 1 : 0;
  }
  c.expect(rgbt_wins == 12 && tir_wins == 88, fmt::format("wins rgbt={} tir={}", rgbt_wins, tir_wins));
  c.equal(r.rgb, 0.0, "rgb ratio");
  c.equal(r.tir, 0.88, "tir ratio");
  c.equal(r.rgbt, 0.12, "rgbt ratio");

  const auto dir = fs::temp_directory_path() / "rgbtfuse-acceptance-c8";
  fs::create_directories(dir);
  const int code = run_cli(
    exe, {"fuse", "--rgb", fixture("fuse12/rgb.txt"), "--tir", fixture("fuse12/tir.txt"), "--rgbt",
          fixture("fuse12/rgbt.txt"), "--out", (dir / "fused.txt").string()},
    dir / "stdout.txt");
  c.expect(code == 0, "cli fuse exit code");
  const std::string printed = read_text_file(dir / "stdout.txt");
  c.expect(printed == "selection ratios rgb=0.0000 tir=0.8800 rgbt=0.1200\n", "cli printed '" + printed + "'");
  fs::remove_all(dir);
  c.note(fmt::format("ratios ({:.2f}, {:.2f}, {:.2f})", r.rgb, r.tir, r.rgbt));
}

void criterion_round_trip(Check & c, const std::string & exe)
{
  std::size_t files = 0;
  // Box files and confidence sidecars.
  for (const auto & e : fs::recursive_directory_iterator(RGBTFUSE_FIXTURES)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension();
    const std::string text = read_text_file(e.path());
    if (ext == ".txt") {
      const auto once = parse_groundtruth(text);
      const auto twice = parse_groundtruth(write_groundtruth(once));
      c.expect(once == twice, "box file " + e.path().string());
      const auto preds = parse_predictions(text);
      c.expect(write_predictions(parse_predictions(write_predictions(preds))) == write_predictions(preds),
               "prediction file " + e.path().string());
      ++files;
    } else if (ext == ".conf" && e.path().filename() != "fuse12_badconf.conf") {
      const auto preds = parse_predictions(read_text_file(fs::path(e.path()).replace_extension(".txt")), text);
      const auto again = parse_predictions(write_predictions(preds), write_confidences(preds));
      c.expect(again == preds, "sidecar " + e.path().string());
      ++files;
    } else if (ext == ".csv" && e.path().filename() != "nonpositive.csv") {
      const auto t = balanced_indicators(parse_expert_scores_csv(text));
      const auto back = parse_indicator_jsonl(export_report(t, ReportFormat::JsonLines));
      bool same = back.rows.size() == t.rows.size();
      for (std::size_t i = 0; same && i < t.rows.size(); ++i) {
        same = back.rows[i].benchmark == t.rows[i].benchmark && back.rows[i].rgbt == t.rows[i].rgbt &&
               back.rows[i].rgb == t.rows[i].rgb && back.rows[i].tir == t.rows[i].tir &&
               back.rows[i].mrank == t.rows[i].mrank;
      }
      c.expect(same, "indicator json-lines " + e.path().string());
      c.expect(
        export_report(parse_indicator_jsonl(export_report(back, ReportFormat::JsonLines)), ReportFormat::JsonLines) ==
          export_report(back, ReportFormat::JsonLines),
        "indicator json-lines fixed point " + e.path().string());
      ++files;
    }
  }
  {
    const auto m = load_manifest(fixture("toy/toy.manifest"));
    const auto rep = compositional_eval(m, load_results(fixture("toy/results"), m), MetricConfig{});
    const auto j = export_report(rep, ReportFormat::JsonLines);
    c.expect(export_report(parse_evaluation_jsonl(j), ReportFormat::JsonLines) == j, "evaluation json-lines");
    const auto fused = fuse_streams(
      load_expert_stream(Expert::Rgb, fixture("fuse12/rgb.txt")),
      load_expert_stream(Expert::Tir, fixture("fuse12/tir.txt")),
      load_expert_stream(Expert::Rgbt, fixture("fuse12/rgbt.txt")));
    c.expect(parse_trace_csv(export_trace_csv(fused.trace)) == fused.trace, "trace csv");
    files += 2;
  }

  // Determinism of every subcommand through the installed binary.
  const auto root = fs::temp_directory_path() / "rgbtfuse-acceptance-c9";
  fs::remove_all(root);
  struct Case
  {
    std::string name;
    std::function<std::vector<std::string>(const fs::path &)> args;
  };
  const std::vector<Case> cases = {
    {"evaluate",
     [](const fs::path & d) {
       return std::vector<std::string>{"evaluate", "--manifest", fixture("toy/toy.manifest"), "--results",
                                       fixture("toy/results"), "--subset", "all", "--format", "json-lines",
                                       "--out", (d / "eval.jsonl").string()};
     }},
    {"fuse",
     [](const fs::path & d) {
       return std::vector<std::string>{"fuse", "--rgb", fixture("fuse12/rgb.txt"), "--tir",
                                       fixture("fuse12/tir.txt"), "--rgbt", fixture("fuse12/rgbt.txt"),
                                       "--out", (d / "fused.txt").string()};
     }},
    {"simulate",
     [](const fs::path & d) {
       return std::vector<std::string>{"simulate", "--config", config_path("mmw-one-modality-dead.cfg"), "--out",
                                       (d / "sim").string(), "--seed", "7"};
     }},
    {"analyze",
     [](const fs::path & d) {
       return std::vector<std::string>{"analyze", "--input", fixture("scores_sr.csv"), "--format", "csv", "--out",
                                       (d / "indicators.csv").string()};
     }},
  };
  for (const auto & k : cases) {
    std::vector<std::vector<std::pair<std::string, std::string>>> snaps;
    for (int run = 0; run < 2; ++run) {
      const auto dir = root / k.name / std::to_string(run);
      fs::create_directories(dir);
      const int code = run_cli(exe, k.args(dir), dir / "stdout.txt");
      c.expect(code == 0, k.name + " exit code " + std::to_string(code));
      snaps.push_back(snapshot(dir));
    }
    c.expect(snaps[0] == snaps[1], k.name + " outputs differ between runs");
    c.expect(snaps[0].size() >= 2, k.name + " wrote no files");
  }
  fs::remove_all(root);
  c.note(fmt::format("{} fixture round trips, 4 subcommands byte-identical across runs", files));
}

}  // namespace

int main(int argc, char ** argv)
{
  if (argc != 2) {
    std::cerr << "usage: rgbtfuse_acceptance <path to rgbtfuse executable>\n";
    return 2;
  }
  const std::string exe = argv[1];

  struct Criterion
  {
    int id;
    std::string title;
    double budget_s;  // 0 means no runtime bound
    std::function<void(Check &)> run;
  };
  // Criterion 7 runs last so that it sees every curve produced before it.
  const std::vector<Criterion> criteria = {
    {1, "balanced indicators reproduce the precision table", 1.0,
     [&](Check & c) { criterion_pr_indicators(c, exe); }},
    {2, "balanced indicators reproduce the success table", 0.0, [&](Check & c) { criterion_sr_indicators(c, exe); }},
    {3, "benchmark scores match the brute-force oracle bit-exactly", 10.0, criterion_oracle},
    {4, "absence semantics fixture", 0.0, criterion_absence},
    {5, "calibrated selection is per-frame optimal", 0.0, criterion_calibrated_selection},
    {6, "when-to-fuse scenarios", 0.0, criterion_when_to_fuse},
    {8, "selection-ratio fixture", 0.0, [&](Check & c) { criterion_selection_ratios(c, exe); }},
    {9, "round trips and byte-identical reruns", 0.0, [&](Check & c) { criterion_round_trip(c, exe); }},
    {7, "success curves non-increasing, precision curves non-decreasing", 0.0, criterion_monotone},
  };

  int failed = 0;
  for (const auto & cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception & e) {
      c.expect(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0.0) {
      c.expect(secs < cr.budget_s, fmt::format("runtime {:.3f}s exceeds {}s", secs, cr.budget_s));
    }
    std::cout << fmt::format(
      "{} criterion {}: {} [{} checks, {:.3f}s]\n", c.failed() ? "FAIL" : "PASS", cr.id, cr.title, c.checks(), secs);
    for (const auto & n : c.notes()) {
      std::cout << "      " << n << "\n";
    }
    for (const auto & f : c.failures()) {
      std::cout << "      failed: " << f << "\n";
    }
    failed += c.failed() ? 1 : 0;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
