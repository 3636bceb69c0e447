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

#ifndef RGBTFUSE__REPORT_HPP_
#define RGBTFUSE__REPORT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgbtfuse/fusion.hpp"
#include "rgbtfuse/metrics.hpp"
#include "rgbtfuse/simulator.hpp"
#include "rgbtfuse/types.hpp"

namespace rgbtfuse
{

enum class ReportFormat { Csv, JsonLines, Table };

std::string_view to_string(ReportFormat format);
ReportFormat parse_report_format(std::string_view name);

/// Which subset breakdowns to add to the overall score.
enum class SubsetRequest { None, Rgb, Tir, Both };

SubsetRequest parse_subset_request(std::string_view name);

struct ScopeScores
{
  std::string scope;  // "overall", "rgb" or "tir"
  std::size_t sequences = 0;
  std::size_t frames = 0;
  BenchmarkScores scores;
};

struct EvaluationReport
{
  std::string tracker;
  double pr_report_threshold = 20.0;
  /// "overall" first, then the requested subsets.
  std::vector<ScopeScores> scopes;
  std::optional<SelectionRatios> selection;

  const ScopeScores & scope(std::string_view name) const;
};

/// Scores the whole benchmark, then each requested subset on its own.
/// Untagged sequences count toward "overall" only. Throws EmptySubset when a
/// requested subset has no sequences.
EvaluationReport compositional_eval(
  const DatasetManifest & manifest, const SequenceResults & results, const MetricConfig & cfg,
  SubsetRequest subsets = SubsetRequest::Both, std::string tracker = "tracker");

struct ExpertScoresRow
{
  std::string benchmark;
  double rgbt;
  double rgb;
  double tir;
};

struct IndicatorRow
{
  std::string benchmark;
  double rgbt = 0.0;
  double rgb = 0.0;
  double tir = 0.0;
  /// 100 * (1 - tir / rgbt); higher means fusion matters more.
  double gap_fusion = 0.0;
  /// 100 * (1 - tir / rgb); lower means the modalities are more balanced.
  double gap_modality = 0.0;
  double rank_fusion = 0.0;
  double rank_modality = 0.0;
  double mrank = 0.0;
};

struct BalancedIndicatorTable
{
  std::vector<IndicatorRow> rows;
};

/// Ranks gap_fusion descending and gap_modality ascending; tied gaps (within
/// 1e-9 percentage points) share the mean of their positions. mRank is the
/// mean of the two ranks. Throws NonPositiveScore.
BalancedIndicatorTable balanced_indicators(const std::vector<ExpertScoresRow> & rows);

/// CSV with header "benchmark,rgbt,rgb,tir". Throws MalformedLine.
std::vector<ExpertScoresRow> parse_expert_scores_csv(std::string_view text);

std::string export_curve_csv(const Curve & c);

std::string export_report(const EvaluationReport & r, ReportFormat format);
std::string export_report(const BalancedIndicatorTable & t, ReportFormat format);
std::string export_report(const ScenarioReport & r, ReportFormat format);

EvaluationReport parse_evaluation_jsonl(std::string_view text);
BalancedIndicatorTable parse_indicator_jsonl(std::string_view text);
ScenarioReport parse_scenario_jsonl(std::string_view text);

/// "frame,chosen,cs_rgb,cs_tir,cs_rgbt" with one row per frame.
std::string export_trace_csv(const SelectionTrace & trace);
SelectionTrace parse_trace_csv(std::string_view text);

}  // namespace rgbtfuse

#endif  // RGBTFUSE__REPORT_HPP_
