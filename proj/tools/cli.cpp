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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "rgbtfuse/error.hpp"
#include "rgbtfuse/fusion.hpp"
#include "rgbtfuse/io.hpp"
#include "rgbtfuse/metrics.hpp"
#include "rgbtfuse/report.hpp"
#include "rgbtfuse/simulator.hpp"

namespace rgbtfuse::cli
{

namespace fs = std::filesystem;

namespace
{
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Expectation
{
  std::string key;
  double value;
  double tolerance;
  std::string text;
};

// key=value, key=value±tol or key=value+-tol.
Expectation parse_expectation(const std::string & text)
{
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError("--expect needs key=value[±tol], got '" + text + "'");
  }
  Expectation e{text.substr(0, eq), 0.0, 1e-9, text};
  std::string rest = text.substr(eq + 1);
  std::string tol;
  for (const std::string sep : {"±", "+-"}) {
    const auto p = rest.find(sep);
    if (p != std::string::npos) {
      tol = rest.substr(p + sep.size());
      rest = rest.substr(0, p);
      break;
    }
  }
  const auto v = parse_real(rest);
  const auto t = tol.empty() ? std::optional<double>(1e-9) : parse_real(tol);
  if (!v || !t || *t < 0.0) {
    throw UsageError("--expect value must be a number with an optional non-negative tolerance: '" + text + "'");
  }
  e.value = *v;
  e.tolerance = *t;
  return e;
}

int check_expectations(
  const std::vector<std::string> & raw, const std::map<std::string, double> & measured, std::ostream & err)
{
  std::vector<Expectation> parsed;
  for (const auto & r : raw) {
    parsed.push_back(parse_expectation(r));
    if (!measured.count(parsed.back().key)) {
      std::string keys;
      for (const auto & [k, v] : measured) keys += (keys.empty() ? "" : ", ") + k;
      throw UsageError("unknown --expect key '" + parsed.back().key + "' (available: " + keys + ")");
    }
  }
  int code = kOk;
  for (const auto & e : parsed) {
    const double got = measured.at(e.key);
    const bool ok = std::abs(got - e.value) <= e.tolerance;
    err << fmt::format("expect {}: {} (measured {:.6f})\n", e.text, ok ? "ok" : "FAILED", got);
    if (!ok) code = kExpectationFailed;
  }
  return code;
}

void emit(const std::string & text, const std::string & out_path, std::ostream & out)
{
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

void add_scores(std::map<std::string, double> & m, const std::string & prefix, const BenchmarkScores & s)
{
  m[prefix + "sr_auc"] = s.sr_auc;
  m[prefix + "pr"] = s.pr_at_threshold;
}

void add_ratios(std::map<std::string, double> & m, const std::string & prefix, const SelectionRatios & r)
{
  m[prefix + "rgb"] = r.rgb;
  m[prefix + "tir"] = r.tir;
  m[prefix + "rgbt"] = r.rgbt;
}

std::string ratio_line(const SelectionRatios & r)
{
  return fmt::format("selection ratios rgb={:.4f} tir={:.4f} rgbt={:.4f}\n", r.rgb, r.tir, r.rgbt);
}

struct EvaluateArgs
{
  std::string manifest;
  std::string results;
  std::string config;
  std::string subset = "none";
  std::string pooling;
  std::string format = "table";
  std::string out;
  std::string name;
  std::vector<std::string> expect;
};

int cmd_evaluate(const EvaluateArgs & a, std::ostream & out, std::ostream & err)
{
  MetricConfig cfg = a.config.empty() ? MetricConfig{} : load_metric_config(a.config);
  if (!a.pooling.empty()) {
    cfg.pooling = parse_pooling(a.pooling);
  }
  const DatasetManifest manifest = load_manifest(a.manifest);
  const SequenceResults results = load_results(a.results, manifest);
  const std::string tracker = a.name.empty() ? fs::path(a.results).filename().string() : a.name;
  EvaluationReport report =
    compositional_eval(manifest, results, cfg, parse_subset_request(a.subset), tracker);

  // Selection traces written by `fuse` next to the predictions, if every
  // sequence has one.
  std::vector<SelectionRecord> records;
  bool all_traced = true;
  for (const auto & entry : manifest.entries()) {
    const fs::path trace_path = fs::path(a.results) / (entry.sequence.id() + ".trace.csv");
    if (!fs::exists(trace_path)) {
      all_traced = false;
      break;
    }
    const SelectionTrace t = parse_trace_csv(read_text_file(trace_path));
    records.insert(records.end(), t.records().begin(), t.records().end());
  }
  if (all_traced && !records.empty()) {
    report.selection = selection_ratios(SelectionTrace(std::move(records)));
  }

  emit(export_report(report, parse_report_format(a.format)), a.out, out);

  std::map<std::string, double> measured;
  for (const auto & s : report.scopes) {
    add_scores(measured, s.scope == "overall" ? "" : s.scope + ".", s.scores);
    add_scores(measured, s.scope + ".", s.scores);
  }
  if (report.selection) {
    add_ratios(measured, "ratio.", *report.selection);
  }
  return check_expectations(a.expect, measured, err);
}

struct FuseArgs
{
  std::string rgb, tir, rgbt;
  std::string rgb_conf, tir_conf, rgbt_conf;
  std::string tie = "rgbt-first";
  std::string out;
  std::string trace;
  std::vector<std::string> expect;
};

std::optional<fs::path> optional_path(const std::string & s)
{
  return s.empty() ? std::nullopt : std::optional<fs::path>(s);
}

int cmd_fuse(const FuseArgs & a, std::ostream & out, std::ostream & err)
{
  const TiePolicy tie = TiePolicy::parse(a.tie);
  const ExpertStream rgb = load_expert_stream(Expert::Rgb, a.rgb, optional_path(a.rgb_conf));
  const ExpertStream tir = load_expert_stream(Expert::Tir, a.tir, optional_path(a.tir_conf));
  const ExpertStream rgbt = load_expert_stream(Expert::Rgbt, a.rgbt, optional_path(a.rgbt_conf));
  const FusionResult fused = fuse_streams(rgb, tir, rgbt, tie);

  const fs::path out_path(a.out);
  fs::path trace_path = a.trace.empty() ? out_path : fs::path(a.trace);
  if (a.trace.empty()) {
    trace_path.replace_extension(".trace.csv");
  }
  write_text_file(out_path, write_predictions(fused.fused));
  write_text_file(sidecar_path(out_path), write_confidences(fused.fused));
  write_text_file(trace_path, export_trace_csv(fused.trace));

  const SelectionRatios ratios = selection_ratios(fused.trace);
  out << ratio_line(ratios);

  std::map<std::string, double> measured;
  add_ratios(measured, "ratio.", ratios);
  return check_expectations(a.expect, measured, err);
}

struct SimulateArgs
{
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format = "table";
  std::vector<std::string> expect;
};

int cmd_simulate(const SimulateArgs & a, std::ostream & out, std::ostream & err)
{
  ScenarioConfig cfg = load_scenario_config(a.config);
  if (a.seed) {
    cfg.seed = *a.seed;
  }
  const ScenarioReport report = run_scenario(cfg);

  const fs::path dir(a.out);
  fs::create_directories(dir / "curves");
  write_text_file(dir / "summary.csv", export_report(report, ReportFormat::Csv));
  write_text_file(dir / "summary.txt", export_report(report, ReportFormat::Table));
  write_text_file(dir / "report.jsonl", export_report(report, ReportFormat::JsonLines));
  for (const auto & p : report.policies) {
    const std::string stem(to_string(p.policy));
    write_text_file(dir / "curves" / (stem + ".success.csv"), export_curve_csv(p.scores.sr_curve));
    write_text_file(dir / "curves" / (stem + ".precision.csv"), export_curve_csv(p.scores.pr_curve));
  }
  write_text_file(
    dir / "selection.csv",
    fmt::format(
      "expert,ratio\nrgb,{:.4f}\ntir,{:.4f}\nrgbt,{:.4f}\n", report.moe_ratios.rgb, report.moe_ratios.tir,
      report.moe_ratios.rgbt));

  out << export_report(report, parse_report_format(a.format));

  std::map<std::string, double> measured;
  for (const auto & p : report.policies) {
    add_scores(measured, std::string(to_string(p.policy)) + ".", p.scores);
  }
  add_ratios(measured, "ratio.", report.moe_ratios);
  return check_expectations(a.expect, measured, err);
}

struct AnalyzeArgs
{
  std::string input;
  std::string format = "table";
  std::string out;
  std::vector<std::string> expect;
};

int cmd_analyze(const AnalyzeArgs & a, std::ostream & out, std::ostream & err)
{
  const std::string text = read_text_file(a.input);
  std::vector<ExpertScoresRow> rows;
  try {
    rows = parse_expert_scores_csv(text);
  } catch (const Error & e) {
    throw Error(e.code(), e.message(), a.input, e.line());
  }
  const BalancedIndicatorTable table = balanced_indicators(rows);
  emit(export_report(table, parse_report_format(a.format)), a.out, out);

  std::map<std::string, double> measured;
  for (const auto & r : table.rows) {
    measured[r.benchmark + ".gap_fusion"] = r.gap_fusion;
    measured[r.benchmark + ".gap_modality"] = r.gap_modality;
    measured[r.benchmark + ".rank_fusion"] = r.rank_fusion;
    measured[r.benchmark + ".rank_modality"] = r.rank_modality;
    measured[r.benchmark + ".mrank"] = r.mrank;
  }
  return check_expectations(a.expect, measured, err);
}
}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Decision-level RGB-T fusion and tracking evaluation toolkit", "rgbtfuse"};
  app.require_subcommand(1);

  const std::vector<std::string> formats = {"csv", "json-lines", "table"};

  EvaluateArgs ev;
  auto * evaluate = app.add_subcommand("evaluate", "Score tracker results against a manifest");
  evaluate->add_option("--manifest", ev.manifest, "Manifest file")->required();
  evaluate->add_option("--results", ev.results, "Directory with <id>.txt predictions")->required();
  evaluate->add_option("--config", ev.config, "Metric config file");
  evaluate->add_option("--subset", ev.subset, "Subset breakdown")
    ->check(CLI::IsMember({"rgb", "tir", "all", "none"}));
  evaluate->add_option("--pooling", ev.pooling, "Override pooling mode")
    ->check(CLI::IsMember({"frame", "literal-eq1"}));
  evaluate->add_option("--format", ev.format, "Output format")->check(CLI::IsMember(formats));
  evaluate->add_option("--out", ev.out, "Write the report here instead of stdout");
  evaluate->add_option("--name", ev.name, "Tracker name in the report");
  evaluate->add_option("--expect", ev.expect, "key=value[±tol] acceptance check");

  FuseArgs fu;
  auto * fuse = app.add_subcommand("fuse", "Select per frame among RGB, TIR and RGBT expert outputs");
  fuse->add_option("--rgb", fu.rgb, "RGB expert predictions")->required();
  fuse->add_option("--tir", fu.tir, "TIR expert predictions")->required();
  fuse->add_option("--rgbt", fu.rgbt, "RGBT expert predictions")->required();
  fuse->add_option("--rgb-conf", fu.rgb_conf, "RGB confidence sidecar (default <stem>.conf)");
  fuse->add_option("--tir-conf", fu.tir_conf, "TIR confidence sidecar (default <stem>.conf)");
  fuse->add_option("--rgbt-conf", fu.rgbt_conf, "RGBT confidence sidecar (default <stem>.conf)");
  fuse->add_option("--tie", fu.tie, "Tie order: rgbt-first, tir-first, rgb-first or a>b>c");
  fuse->add_option("--out", fu.out, "Fused prediction file")->required();
  fuse->add_option("--trace", fu.trace, "Trace csv (default <stem>.trace.csv)");
  fuse->add_option("--expect", fu.expect, "key=value[±tol] acceptance check");

  SimulateArgs si;
  auto * simulate = app.add_subcommand("simulate", "Run a synthetic when-to-fuse scenario");
  simulate->add_option("--config", si.config, "Scenario config file")->required();
  simulate->add_option("--out", si.out, "Output directory")->required();
  simulate->add_option("--seed", si.seed, "Override the config seed");
  simulate->add_option("--format", si.format, "Stdout format")->check(CLI::IsMember(formats));
  simulate->add_option("--expect", si.expect, "key=value[±tol] acceptance check");

  AnalyzeArgs an;
  auto * analyze = app.add_subcommand("analyze", "Balanced-benchmark indicators and mRank");
  analyze->add_option("--input", an.input, "CSV with benchmark,rgbt,rgb,tir")->required();
  analyze->add_option("--format", an.format, "Output format")->check(CLI::IsMember(formats));
  analyze->add_option("--out", an.out, "Write the table here instead of stdout");
  analyze->add_option("--expect", an.expect, "key=value[±tol] acceptance check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*evaluate) return cmd_evaluate(ev, out, err);
    if (*fuse) return cmd_fuse(fu, out, err);
    if (*simulate) return cmd_simulate(si, out, err);
    if (*analyze) return cmd_analyze(an, out, err);
  } catch (const UsageError & e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error & e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const fs::filesystem_error & e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace rgbtfuse::cli
