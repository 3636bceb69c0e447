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

#ifndef RGBTFUSE__METRICS_HPP_
#define RGBTFUSE__METRICS_HPP_

#include <map>
#include <string>
#include <vector>

#include "rgbtfuse/types.hpp"

namespace rgbtfuse
{

/// How per-frame values become a sequence score.
///  - FrameIndicator: threshold every frame, then average the 0/1 indicators.
///  - LiteralEq1: average the raw per-frame IoU (or distance) first, then
///    threshold the mean, so a sequence scores exactly 0 or 1.
enum class Pooling { FrameIndicator, LiteralEq1 };

std::string_view to_string(Pooling pooling);
Pooling parse_pooling(std::string_view name);

/// Evenly spaced thresholds from `start` to `stop` inclusive. Each point is
/// snapped to 12 decimals so that e.g. 0:0.05:1 yields the nearest doubles to
/// 0.05 * i rather than accumulated rounding error.
std::vector<double> make_grid(double start, double step, double stop);

struct MetricConfig
{
  std::vector<double> success_thresholds = make_grid(0.0, 0.05, 1.0);
  std::vector<double> precision_thresholds = make_grid(0.0, 1.0, 50.0);
  Pooling pooling = Pooling::FrameIndicator;
  double pr_report_threshold = 20.0;

  /// Throws TypeError / InvalidConfig on a broken config.
  void validate() const;
};

struct Curve
{
  std::vector<double> thresholds;
  std::vector<double> scores;

  std::size_t size() const noexcept { return thresholds.size(); }
  /// Score at an exact grid point; throws InvalidConfig if `threshold` is off-grid.
  double at(double threshold) const;

  friend bool operator==(const Curve &, const Curve &) = default;
};

double iou(const FrameTruth & g, const FramePrediction & p);

struct DistanceOutcome
{
  enum class Kind { Measured, CorrectAbsence, Mismatch };
  Kind kind;
  /// Centre distance in pixels; only meaningful when kind == Measured.
  double pixels;
};

DistanceOutcome center_distance(const FrameTruth & g, const FramePrediction & p);

bool frame_success_indicator(const FrameTruth & g, const FramePrediction & p, double th_s);
bool frame_precision_indicator(const FrameTruth & g, const FramePrediction & p, double th_p);

enum class ScoreKind { Success, Precision };

double sequence_score(
  const SequenceAnnotation & gt, const std::vector<FramePrediction> & pred, double threshold,
  ScoreKind kind, Pooling pooling);

/// Mean of the curve scores. Throws EmptyCurve, or InvalidArgument when the
/// thresholds are not strictly increasing.
double auc(const Curve & c);

using SequenceResults = std::map<std::string, std::vector<FramePrediction>>;

struct BenchmarkScores
{
  Curve pr_curve;
  Curve sr_curve;
  double pr_at_threshold = 0.0;
  double sr_auc = 0.0;
};

/// Benchmark curves: for every threshold, the mean over sequences (manifest
/// order, plain left-to-right summation) of the per-sequence score.
BenchmarkScores benchmark_scores(
  const DatasetManifest & manifest, const SequenceResults & results, const MetricConfig & cfg);

}  // namespace rgbtfuse

#endif  // RGBTFUSE__METRICS_HPP_
