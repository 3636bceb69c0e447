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

#include "rgbtfuse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rgbtfuse/error.hpp"

namespace rgbtfuse
{

std::string_view to_string(Pooling pooling)
{
  return pooling == Pooling::FrameIndicator ? "frame" : "literal-eq1";
}

Pooling parse_pooling(std::string_view name)
{
  if (name == "frame" || name == "frame-indicator") return Pooling::FrameIndicator;
  if (name == "literal-eq1") return Pooling::LiteralEq1;
  throw Error(ErrorCode::TypeError, "pooling must be frame or literal-eq1", std::string(name));
}

std::vector<double> make_grid(double start, double step, double stop)
{
  if (!std::isfinite(start) || !std::isfinite(step) || !std::isfinite(stop) || step <= 0.0 ||
    stop < start)
  {
    throw Error(ErrorCode::TypeError, "grid needs finite start <= stop and a positive step");
  }
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return grid;
}

namespace
{
bool strictly_increasing(const std::vector<double> & v)
{
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

constexpr double kGridTolerance = 1e-9;
}  // namespace

void MetricConfig::validate() const
{
  if (success_thresholds.empty() || !strictly_increasing(success_thresholds)) {
    throw Error(ErrorCode::TypeError, "must be a non-empty strictly increasing list", "success_thresholds");
  }
  if (success_thresholds.front() < 0.0 || success_thresholds.back() > 1.0) {
    throw Error(ErrorCode::TypeError, "IoU thresholds must lie in [0, 1]", "success_thresholds");
  }
  if (precision_thresholds.empty() || !strictly_increasing(precision_thresholds)) {
    throw Error(ErrorCode::TypeError, "must be a non-empty strictly increasing list", "precision_thresholds");
  }
  if (precision_thresholds.front() < 0.0) {
    throw Error(ErrorCode::TypeError, "distance thresholds must be non-negative", "precision_thresholds");
  }
  const bool on_grid = std::any_of(
    precision_thresholds.begin(), precision_thresholds.end(),
    [&](double t) { return std::abs(t - pr_report_threshold) <= kGridTolerance; });
  if (!on_grid) {
    throw Error(
      ErrorCode::InvalidConfig, "pr_report_threshold must be a point of precision_thresholds",
      "pr_report_threshold");
  }
}

double Curve::at(double threshold) const
{
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (std::abs(thresholds[i] - threshold) <= kGridTolerance) {
      return scores[i];
    }
  }
  throw Error(ErrorCode::InvalidConfig, "threshold is not a grid point", std::to_string(threshold));
}

double iou(const FrameTruth & g, const FramePrediction & p)
{
  if (!g.is_present()) {
    return p.is_present() ? 0.0 : 1.0;
  }
  if (!p.is_present()) {
    return 0.0;
  }
  const Box & a = *g.box();
  const Box & b = *p.box();
  const double iw = std::max(0.0, std::min(a.x() + a.w(), b.x() + b.w()) - std::max(a.x(), b.x()));
  const double ih = std::max(0.0, std::min(a.y() + a.h(), b.y() + b.h()) - std::max(a.y(), b.y()));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

DistanceOutcome center_distance(const FrameTruth & g, const FramePrediction & p)
{
  if (g.is_present() && p.is_present()) {
    const Point a = g.box()->center();
    const Point b = p.box()->center();
    return {DistanceOutcome::Kind::Measured, std::hypot(a.x - b.x, a.y - b.y)};
  }
  if (!g.is_present() && !p.is_present()) {
    return {DistanceOutcome::Kind::CorrectAbsence, 0.0};
  }
  return {DistanceOutcome::Kind::Mismatch, std::numeric_limits<double>::infinity()};
}

bool frame_success_indicator(const FrameTruth & g, const FramePrediction & p, double th_s)
{
  // A correct absence is a hit at every threshold, including th_s = 1.
  if (!g.is_present() && !p.is_present()) {
    return true;
  }
  return iou(g, p) > th_s;
}

bool frame_precision_indicator(const FrameTruth & g, const FramePrediction & p, double th_p)
{
  const DistanceOutcome d = center_distance(g, p);
  switch (d.kind) {
    case DistanceOutcome::Kind::Measured: return d.pixels <= th_p;
    case DistanceOutcome::Kind::CorrectAbsence: return true;
    case DistanceOutcome::Kind::Mismatch: return false;
  }
  return false;
}

namespace
{
void check_lengths(const SequenceAnnotation & gt, const std::vector<FramePrediction> & pred)
{
  if (gt.size() != pred.size()) {
    throw Error(
      ErrorCode::LengthMismatch,
      std::to_string(pred.size()) + " predictions for " + std::to_string(gt.size()) + " frames",
      gt.id());
  }
}

// Per-frame raw values, computed once per sequence and reused across the grid.
struct FrameValues
{
  std::vector<double> overlap;
  std::vector<DistanceOutcome> distance;
};

FrameValues frame_values(const SequenceAnnotation & gt, const std::vector<FramePrediction> & pred)
{
  FrameValues v;
  v.overlap.reserve(gt.size());
  v.distance.reserve(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const auto & g = gt.frames()[i];
    v.overlap.push_back(iou(g, pred[i]));
    v.distance.push_back(center_distance(g, pred[i]));
  }
  return v;
}

double score_from_values(
  const FrameValues & v, const SequenceAnnotation & gt, const std::vector<FramePrediction> & pred,
  double threshold, ScoreKind kind, Pooling pooling)
{
  const std::size_t t = v.overlap.size();
  if (pooling == Pooling::FrameIndicator) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < t; ++i) {
      const bool correct_absence = !gt.frames()[i].is_present() && !pred[i].is_present();
      bool hit = false;
      if (kind == ScoreKind::Success) {
        hit = correct_absence || v.overlap[i] > threshold;
      } else {
        hit = v.distance[i].kind == DistanceOutcome::Kind::CorrectAbsence ||
          (v.distance[i].kind == DistanceOutcome::Kind::Measured && v.distance[i].pixels <= threshold);
      }
      hits += hit ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(t);
  }

  // Literal reading: a correct absence counts as IoU 1 / distance 0, a
  // presence mismatch as IoU 0 / infinite distance.
  double sum = 0.0;
  for (std::size_t i = 0; i < t; ++i) {
    sum += kind == ScoreKind::Success ? v.overlap[i] : v.distance[i].pixels;
  }
  const double mean = sum / static_cast<double>(t);
  if (kind == ScoreKind::Success) {
    return mean > threshold ? 1.0 : 0.0;
  }
  return mean <= threshold ? 1.0 : 0.0;
}
}  // namespace

double sequence_score(
  const SequenceAnnotation & gt, const std::vector<FramePrediction> & pred, double threshold,
  ScoreKind kind, Pooling pooling)
{
  check_lengths(gt, pred);
  return score_from_values(frame_values(gt, pred), gt, pred, threshold, kind, pooling);
}

double auc(const Curve & c)
{
  if (c.scores.empty()) {
    throw Error(ErrorCode::EmptyCurve, "cannot integrate an empty curve");
  }
  if (c.thresholds.size() != c.scores.size() || !strictly_increasing(c.thresholds)) {
    throw Error(ErrorCode::InvalidArgument, "curve thresholds must be strictly increasing and match scores");
  }
  double sum = 0.0;
  for (double s : c.scores) {
    sum += s;
  }
  return sum / static_cast<double>(c.scores.size());
}

BenchmarkScores benchmark_scores(
  const DatasetManifest & manifest, const SequenceResults & results, const MetricConfig & cfg)
{
  cfg.validate();
  const auto & st = cfg.success_thresholds;
  const auto & pt = cfg.precision_thresholds;
  std::vector<double> sr_sum(st.size(), 0.0);
  std::vector<double> pr_sum(pt.size(), 0.0);

  for (const auto & entry : manifest.entries()) {
    const auto & gt = entry.sequence;
    const auto it = results.find(gt.id());
    if (it == results.end()) {
      throw Error(ErrorCode::MissingSequenceResult, "no predictions for sequence", gt.id());
    }
    check_lengths(gt, it->second);
    const FrameValues v = frame_values(gt, it->second);
    for (std::size_t k = 0; k < st.size(); ++k) {
      sr_sum[k] += score_from_values(v, gt, it->second, st[k], ScoreKind::Success, cfg.pooling);
    }
    for (std::size_t k = 0; k < pt.size(); ++k) {
      pr_sum[k] += score_from_values(v, gt, it->second, pt[k], ScoreKind::Precision, cfg.pooling);
    }
  }

  const auto m = static_cast<double>(manifest.m());
  BenchmarkScores out;
  out.sr_curve.thresholds = st;
  out.pr_curve.thresholds = pt;
  for (double s : sr_sum) {
    out.sr_curve.scores.push_back(s / m);
  }
  for (double s : pr_sum) {
    out.pr_curve.scores.push_back(s / m);
  }
  out.sr_auc = auc(out.sr_curve);
  out.pr_at_threshold = out.pr_curve.at(cfg.pr_report_threshold);
  return out;
}

}  // namespace rgbtfuse
