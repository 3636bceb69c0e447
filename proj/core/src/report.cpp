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

#include "rgbtfuse/report.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rgbtfuse/error.hpp"
#include "rgbtfuse/io.hpp"

namespace rgbtfuse
{

using Json = nlohmann::ordered_json;

std::string_view to_string(ReportFormat format)
{
  switch (format) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::JsonLines: return "json-lines";
    case ReportFormat::Table: return "table";
  }
  return "table";
}

ReportFormat parse_report_format(std::string_view name)
{
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json-lines" || name == "jsonl") return ReportFormat::JsonLines;
  if (name == "table") return ReportFormat::Table;
  throw Error(ErrorCode::TypeError, "format must be csv, json-lines or table", std::string(name));
}

SubsetRequest parse_subset_request(std::string_view name)
{
  if (name == "none") return SubsetRequest::None;
  if (name == "rgb") return SubsetRequest::Rgb;
  if (name == "tir") return SubsetRequest::Tir;
  if (name == "all") return SubsetRequest::Both;
  throw Error(ErrorCode::TypeError, "subset must be rgb, tir, all or none", std::string(name));
}

const ScopeScores & EvaluationReport::scope(std::string_view name) const
{
  for (const auto & s : scopes) {
    if (s.scope == name) {
      return s;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "scope missing from report", std::string(name));
}

namespace
{
ScopeScores score_scope(
  std::string name, const DatasetManifest & manifest, const SequenceResults & results,
  const MetricConfig & cfg)
{
  return {std::move(name), manifest.m(), manifest.total_frames(), benchmark_scores(manifest, results, cfg)};
}
}  // namespace

EvaluationReport compositional_eval(
  const DatasetManifest & manifest, const SequenceResults & results, const MetricConfig & cfg,
  SubsetRequest subsets, std::string tracker)
{
  EvaluationReport report;
  report.tracker = std::move(tracker);
  report.pr_report_threshold = cfg.pr_report_threshold;
  report.scopes.push_back(score_scope("overall", manifest, results, cfg));
  if (subsets == SubsetRequest::Rgb || subsets == SubsetRequest::Both) {
    report.scopes.push_back(score_scope("rgb", manifest.filtered(Subset::RgbDominant), results, cfg));
  }
  if (subsets == SubsetRequest::Tir || subsets == SubsetRequest::Both) {
    report.scopes.push_back(score_scope("tir", manifest.filtered(Subset::TirDominant), results, cfg));
  }
  return report;
}

namespace
{
constexpr double kRankTieTolerance = 1e-9;

std::vector<double> average_ranks(const std::vector<double> & values, bool descending)
{
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t better = 0;
    std::size_t tied = 0;
    for (double other : values) {
      const double diff = descending ? other - values[i] : values[i] - other;
      if (std::abs(diff) <= kRankTieTolerance) {
        ++tied;
      } else if (diff > 0.0) {
        ++better;
      }
    }
    ranks[i] = static_cast<double>(better) + static_cast<double>(tied + 1) / 2.0;
  }
  return ranks;
}
}  // namespace

BalancedIndicatorTable balanced_indicators(const std::vector<ExpertScoresRow> & rows)
{
  BalancedIndicatorTable table;
  std::vector<double> fusion;
  std::vector<double> modality;
  for (const auto & r : rows) {
    for (double s : {r.rgbt, r.rgb, r.tir}) {
      if (!std::isfinite(s) || s <= 0.0) {
        throw Error(ErrorCode::NonPositiveScore, "expert scores must be positive", r.benchmark);
      }
    }
    IndicatorRow row;
    row.benchmark = r.benchmark;
    row.rgbt = r.rgbt;
    row.rgb = r.rgb;
    row.tir = r.tir;
    row.gap_fusion = 100.0 * (1.0 - r.tir / r.rgbt);
    row.gap_modality = 100.0 * (1.0 - r.tir / r.rgb);
    fusion.push_back(row.gap_fusion);
    modality.push_back(row.gap_modality);
    table.rows.push_back(std::move(row));
  }
  const auto rank_fusion = average_ranks(fusion, true);
  const auto rank_modality = average_ranks(modality, false);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.rows[i].rank_fusion = rank_fusion[i];
    table.rows[i].rank_modality = rank_modality[i];
    table.rows[i].mrank = (rank_fusion[i] + rank_modality[i]) / 2.0;
  }
  return table;
}

namespace
{
std::string_view trim_view(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_csv_line(std::string_view line)
{
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto c = line.find(',', pos);
    out.emplace_back(trim_view(line.substr(pos, c == std::string_view::npos ? line.npos : c - pos)));
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::string_view>> numbered_lines(std::string_view text)
{
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t pos = 0;
  std::size_t n = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++n;
    const auto line = trim_view(text.substr(pos, end - pos));
    if (!line.empty()) {
      out.emplace_back(n, line);
    }
    pos = end + 1;
  }
  return out;
}

double csv_real(const std::string & field, std::size_t line)
{
  const auto v = parse_real(field);
  if (!v) {
    throw Error(ErrorCode::MalformedLine, "not a number: '" + field + "'", {}, line);
  }
  return *v;
}
}  // namespace

std::vector<ExpertScoresRow> parse_expert_scores_csv(std::string_view text)
{
  const auto lines = numbered_lines(text);
  if (lines.empty()) {
    throw Error(ErrorCode::MalformedLine, "missing header benchmark,rgbt,rgb,tir", {}, 1);
  }
  const auto header = split_csv_line(lines.front().second);
  if (header != std::vector<std::string>{"benchmark", "rgbt", "rgb", "tir"}) {
    throw Error(ErrorCode::MalformedLine, "header must be benchmark,rgbt,rgb,tir", {}, lines.front().first);
  }
  std::vector<ExpertScoresRow> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [line_no, line] = lines[k];
    const auto f = split_csv_line(line);
    if (f.size() != 4 || f[0].empty()) {
      throw Error(ErrorCode::MalformedLine, "expected benchmark,rgbt,rgb,tir", {}, line_no);
    }
    rows.push_back({f[0], csv_real(f[1], line_no), csv_real(f[2], line_no), csv_real(f[3], line_no)});
  }
  return rows;
}

namespace
{
double round4(double v) { return std::round(v * 1e4) / 1e4; }

std::string fixed4(double v) { return fmt::format("{:.4f}", v); }
std::string percent1(double v) { return fmt::format("{:.1f}", v); }

std::string render_table(const std::vector<std::string> & header, const std::vector<std::vector<std::string>> & rows)
{
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto & r : rows) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  const auto line = [&](const std::vector<std::string> & cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out += c == 0 ? fmt::format("{:<{}}", cells[c], width[c]) : fmt::format("  {:>{}}", cells[c], width[c]);
    }
    return out + "\n";
  };
  std::string out = line(header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out += std::string(total - 2, '-') + "\n";
  for (const auto & r : rows) {
    out += line(r);
  }
  return out;
}

std::string render_csv(const std::vector<std::string> & header, const std::vector<std::vector<std::string>> & rows)
{
  std::string out = fmt::format("{}\n", fmt::join(header, ","));
  for (const auto & r : rows) {
    out += fmt::format("{}\n", fmt::join(r, ","));
  }
  return out;
}

Json rounded(const std::vector<double> & v)
{
  Json arr = Json::array();
  for (double x : v) {
    arr.push_back(round4(x));
  }
  return arr;
}

Json curves_json(const BenchmarkScores & s)
{
  Json j;
  j["pr_at_threshold"] = round4(s.pr_at_threshold);
  j["sr_auc"] = round4(s.sr_auc);
  j["success_thresholds"] = rounded(s.sr_curve.thresholds);
  j["success_scores"] = rounded(s.sr_curve.scores);
  j["precision_thresholds"] = rounded(s.pr_curve.thresholds);
  j["precision_scores"] = rounded(s.pr_curve.scores);
  return j;
}

BenchmarkScores curves_from_json(const Json & j)
{
  BenchmarkScores s;
  s.pr_at_threshold = j.at("pr_at_threshold").get<double>();
  s.sr_auc = j.at("sr_auc").get<double>();
  s.sr_curve.thresholds = j.at("success_thresholds").get<std::vector<double>>();
  s.sr_curve.scores = j.at("success_scores").get<std::vector<double>>();
  s.pr_curve.thresholds = j.at("precision_thresholds").get<std::vector<double>>();
  s.pr_curve.scores = j.at("precision_scores").get<std::vector<double>>();
  return s;
}

Json selection_json(const SelectionRatios & r)
{
  Json j;
  j["record"] = "selection";
  j["rgb"] = round4(r.rgb);
  j["tir"] = round4(r.tir);
  j["rgbt"] = round4(r.rgbt);
  return j;
}

SelectionRatios selection_from_json(const Json & j)
{
  return {j.at("rgb").get<double>(), j.at("tir").get<double>(), j.at("rgbt").get<double>()};
}

std::string jsonl(const std::vector<Json> & records)
{
  std::string out;
  for (const auto & r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::size_t, Json>> parse_records(std::string_view text)
{
  std::vector<std::pair<std::size_t, Json>> out;
  for (const auto & [line_no, line] : numbered_lines(text)) {
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("record")) {
      throw Error(ErrorCode::MalformedLine, "not a json-lines report record", {}, line_no);
    }
    out.emplace_back(line_no, std::move(j));
  }
  return out;
}

template <typename Fn>
void each_record(std::string_view text, Fn && fn)
{
  for (const auto & [line_no, j] : parse_records(text)) {
    try {
      fn(j.at("record").template get<std::string>(), j);
    } catch (const Json::exception & e) {
      throw Error(ErrorCode::MalformedLine, e.what(), {}, line_no);
    } catch (const Error & e) {
      throw Error(ErrorCode::MalformedLine, e.message(), e.subject(), line_no);
    }
  }
}
}  // namespace

std::string export_curve_csv(const Curve & c)
{
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < c.size(); ++i) {
    rows.push_back({fixed4(c.thresholds[i]), fixed4(c.scores[i])});
  }
  return render_csv({"threshold", "score"}, rows);
}

std::string export_report(const EvaluationReport & r, ReportFormat format)
{
  if (format == ReportFormat::JsonLines) {
    std::vector<Json> records;
    Json head;
    head["record"] = "evaluation";
    head["tracker"] = r.tracker;
    head["pr_report_threshold"] = round4(r.pr_report_threshold);
    records.push_back(head);
    for (const auto & s : r.scopes) {
      Json j;
      j["record"] = "scope";
      j["scope"] = s.scope;
      j["sequences"] = s.sequences;
      j["frames"] = s.frames;
      j.update(curves_json(s.scores));
      records.push_back(j);
    }
    if (r.selection) {
      records.push_back(selection_json(*r.selection));
    }
    return jsonl(records);
  }

  const std::string pr_col = "pr@" + format_real(r.pr_report_threshold);
  std::vector<std::vector<std::string>> rows;
  for (const auto & s : r.scopes) {
    std::vector<std::string> row = {
      r.tracker, s.scope, std::to_string(s.sequences), std::to_string(s.frames),
      fixed4(s.scores.pr_at_threshold), fixed4(s.scores.sr_auc)};
    if (format == ReportFormat::Csv) {
      for (double v : {r.selection ? r.selection->rgb : NAN, r.selection ? r.selection->tir : NAN,
             r.selection ? r.selection->rgbt : NAN})
      {
        row.push_back(r.selection ? fixed4(v) : "");
      }
    }
    rows.push_back(std::move(row));
  }
  if (format == ReportFormat::Csv) {
    return render_csv(
      {"tracker", "scope", "sequences", "frames", pr_col, "sr_auc", "sel_rgb", "sel_tir", "sel_rgbt"}, rows);
  }
  std::string out = render_table({"tracker", "scope", "sequences", "frames", pr_col, "sr_auc"}, rows);
  if (r.selection) {
    out += fmt::format(
      "selection ratios  rgb={}  tir={}  rgbt={}\n", fixed4(r.selection->rgb), fixed4(r.selection->tir),
      fixed4(r.selection->rgbt));
  }
  return out;
}

namespace
{
std::string rank_text(double rank) { return format_real(rank); }
}  // namespace

std::string export_report(const BalancedIndicatorTable & t, ReportFormat format)
{
  if (format == ReportFormat::JsonLines) {
    std::vector<Json> records;
    for (const auto & r : t.rows) {
      Json j;
      j["record"] = "indicator";
      j["benchmark"] = r.benchmark;
      j["rgbt"] = round4(r.rgbt);
      j["rgb"] = round4(r.rgb);
      j["tir"] = round4(r.tir);
      j["gap_fusion"] = round4(r.gap_fusion);
      j["rank_fusion"] = r.rank_fusion;
      j["gap_modality"] = round4(r.gap_modality);
      j["rank_modality"] = r.rank_modality;
      j["mrank"] = r.mrank;
      records.push_back(j);
    }
    return jsonl(records);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto & r : t.rows) {
    if (format == ReportFormat::Csv) {
      rows.push_back(
        {r.benchmark, percent1(r.rgbt), percent1(r.rgb), percent1(r.tir), percent1(r.gap_fusion),
         rank_text(r.rank_fusion), percent1(r.gap_modality), rank_text(r.rank_modality), rank_text(r.mrank)});
    } else {
      rows.push_back(
        {r.benchmark, percent1(r.rgbt), percent1(r.rgb), percent1(r.tir),
         fmt::format("{} ({})", percent1(r.gap_fusion), rank_text(r.rank_fusion)),
         fmt::format("{} ({})", percent1(r.gap_modality), rank_text(r.rank_modality)), rank_text(r.mrank)});
    }
  }
  if (format == ReportFormat::Csv) {
    return render_csv(
      {"benchmark", "RGBT", "RGB", "TIR", "(1-TIR/RGBT)/%", "rank_fusion", "(1-TIR/RGB)/%", "rank_modality",
       "mRank"},
      rows);
  }
  return render_table({"benchmark", "RGBT", "RGB", "TIR", "(1-TIR/RGBT)/%", "(1-TIR/RGB)/%", "mRank"}, rows);
}

std::string export_report(const ScenarioReport & r, ReportFormat format)
{
  if (format == ReportFormat::JsonLines) {
    std::vector<Json> records;
    Json head;
    head["record"] = "scenario";
    head["name"] = r.name;
    head["seed"] = r.seed;
    head["sequences"] = r.sequences;
    head["frames"] = r.frames;
    records.push_back(head);
    for (const auto & p : r.policies) {
      Json j;
      j["record"] = "policy";
      j["policy"] = std::string(to_string(p.policy));
      j.update(curves_json(p.scores));
      records.push_back(j);
    }
    records.push_back(selection_json(r.moe_ratios));
    return jsonl(records);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto & p : r.policies) {
    rows.push_back({std::string(to_string(p.policy)), fixed4(p.scores.pr_at_threshold), fixed4(p.scores.sr_auc)});
  }
  if (format == ReportFormat::Csv) {
    return render_csv({"policy", "pr_at_threshold", "sr_auc"}, rows);
  }
  std::string out = fmt::format(
    "scenario {}  seed={}  sequences={}  frames={}\n", r.name, r.seed, r.sequences, r.frames);
  out += render_table({"policy", "pr_at_threshold", "sr_auc"}, rows);
  out += fmt::format(
    "moe selection ratios  rgb={}  tir={}  rgbt={}\n", fixed4(r.moe_ratios.rgb), fixed4(r.moe_ratios.tir),
    fixed4(r.moe_ratios.rgbt));
  return out;
}

EvaluationReport parse_evaluation_jsonl(std::string_view text)
{
  EvaluationReport r;
  each_record(text, [&](const std::string & kind, const Json & j) {
    if (kind == "evaluation") {
      r.tracker = j.at("tracker").get<std::string>();
      r.pr_report_threshold = j.at("pr_report_threshold").get<double>();
    } else if (kind == "scope") {
      r.scopes.push_back(
        {j.at("scope").get<std::string>(), j.at("sequences").get<std::size_t>(), j.at("frames").get<std::size_t>(),
         curves_from_json(j)});
    } else if (kind == "selection") {
      r.selection = selection_from_json(j);
    } else {
      throw Error(ErrorCode::MalformedLine, "unexpected record " + kind);
    }
  });
  return r;
}

BalancedIndicatorTable parse_indicator_jsonl(std::string_view text)
{
  BalancedIndicatorTable t;
  each_record(text, [&](const std::string & kind, const Json & j) {
    if (kind != "indicator") {
      throw Error(ErrorCode::MalformedLine, "unexpected record " + kind);
    }
    IndicatorRow row;
    row.benchmark = j.at("benchmark").get<std::string>();
    row.rgbt = j.at("rgbt").get<double>();
    row.rgb = j.at("rgb").get<double>();
    row.tir = j.at("tir").get<double>();
    row.gap_fusion = j.at("gap_fusion").get<double>();
    row.rank_fusion = j.at("rank_fusion").get<double>();
    row.gap_modality = j.at("gap_modality").get<double>();
    row.rank_modality = j.at("rank_modality").get<double>();
    row.mrank = j.at("mrank").get<double>();
    t.rows.push_back(std::move(row));
  });
  return t;
}

ScenarioReport parse_scenario_jsonl(std::string_view text)
{
  ScenarioReport r;
  each_record(text, [&](const std::string & kind, const Json & j) {
    if (kind == "scenario") {
      r.name = j.at("name").get<std::string>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.sequences = j.at("sequences").get<std::size_t>();
      r.frames = j.at("frames").get<std::size_t>();
    } else if (kind == "policy") {
      r.policies.push_back({parse_policy(j.at("policy").get<std::string>()), curves_from_json(j)});
    } else if (kind == "selection") {
      r.moe_ratios = selection_from_json(j);
    } else {
      throw Error(ErrorCode::MalformedLine, "unexpected record " + kind);
    }
  });
  return r;
}

std::string export_trace_csv(const SelectionTrace & trace)
{
  std::string out = "frame,chosen,cs_rgb,cs_tir,cs_rgbt\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto & rec = trace.records()[i];
    out += fmt::format(
      "{},{},{},{},{}\n", i, to_string(rec.chosen), format_real(rec.cs[0]), format_real(rec.cs[1]),
      format_real(rec.cs[2]));
  }
  return out;
}

SelectionTrace parse_trace_csv(std::string_view text)
{
  const auto lines = numbered_lines(text);
  if (lines.empty() || lines.front().second != "frame,chosen,cs_rgb,cs_tir,cs_rgbt") {
    throw Error(ErrorCode::MalformedLine, "header must be frame,chosen,cs_rgb,cs_tir,cs_rgbt", {}, 1);
  }
  std::vector<SelectionRecord> records;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [line_no, line] = lines[k];
    const auto f = split_csv_line(line);
    if (f.size() != 5 || f[0] != std::to_string(k - 1)) {
      throw Error(ErrorCode::MalformedLine, "expected frame,chosen,cs_rgb,cs_tir,cs_rgbt", {}, line_no);
    }
    SelectionRecord rec{};
    try {
      rec.chosen = parse_expert(f[1]);
    } catch (const Error & e) {
      throw Error(ErrorCode::MalformedLine, e.message(), {}, line_no);
    }
    rec.cs = {csv_real(f[2], line_no), csv_real(f[3], line_no), csv_real(f[4], line_no)};
    rec.mc = rec.cs[index_of(rec.chosen)];
    records.push_back(rec);
  }
  try {
    return SelectionTrace(std::move(records));
  } catch (const Error & e) {
    throw Error(ErrorCode::MalformedLine, e.message(), e.subject());
  }
}

}  // namespace rgbtfuse
