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

#include "rgbtfuse/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <utility>

#include "rgbtfuse/error.hpp"

namespace rgbtfuse
{

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string_view to_string(DegradedBehavior behavior)
{
  switch (behavior) {
    case DegradedBehavior::UniformRandomBox: return "uniform-random-box";
    case DegradedBehavior::FrozenBox: return "frozen-box";
    case DegradedBehavior::DriftingBox: return "drifting-box";
  }
  return "uniform-random-box";
}

DegradedBehavior parse_degraded_behavior(std::string_view name)
{
  if (name == "uniform-random-box") return DegradedBehavior::UniformRandomBox;
  if (name == "frozen-box") return DegradedBehavior::FrozenBox;
  if (name == "drifting-box") return DegradedBehavior::DriftingBox;
  throw Error(
    ErrorCode::TypeError, "behavior must be uniform-random-box, frozen-box or drifting-box",
    std::string(name));
}

namespace
{
void require(bool ok, const std::string & key, const std::string & message)
{
  if (!ok) {
    throw Error(ErrorCode::InvalidConfig, message, key);
  }
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// Stream tags for derive_seed within one sequence.
enum StreamTag : std::uint64_t {
  kTrajectory = 1,
  kRgbStream = 2,
  kTirStream = 3,
  kFusedStream = 4,
  kMaskDraws = 11,
  kJitterDraws = 12,
  kDegradedDraws = 13,
  kConfidenceDraws = 14,
};
}  // namespace

void DegradationProfile::validate() const
{
  const std::string prefix(to_string(modality));
  require(modality != Expert::Rgbt, prefix, "a degradation profile targets rgb or tir");
  require(
    std::isfinite(degraded_fraction) && degraded_fraction >= 0.0 && degraded_fraction <= 1.0,
    prefix + ".degraded_fraction", "must lie in [0, 1]");
  require(finite_nonneg(informative_noise), prefix + ".informative_noise", "must be >= 0");
  require(finite_nonneg(confidence_noise), prefix + ".confidence_noise", "must be >= 0");
  for (const auto & iv : intervals) {
    require(iv.start < iv.end, prefix + ".intervals", "each interval needs start < end");
  }
}

void FusedQualityModel::validate() const
{
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0, "fused.alpha", "must lie in [0, 1]");
  require(finite_nonneg(beta), "fused.beta", "must be >= 0");
  require(finite_nonneg(confidence_noise), "fused.confidence_noise", "must be >= 0");
}

void ScenarioConfig::validate() const
{
  require(sequences >= 1, "sequences", "must be >= 1");
  require(frames >= 1, "frames", "must be >= 1");
  require(
    std::isfinite(extent.width) && std::isfinite(extent.height) && extent.width > 0.0 &&
      extent.height > 0.0,
    "width", "image extent must be positive");
  require(std::isfinite(size_min) && size_min > 0.0, "size_min", "must be > 0");
  require(std::isfinite(size_max) && size_max >= size_min, "size_max", "must be >= size_min");
  require(
    size_max <= std::min(extent.width, extent.height), "size_max", "object must fit in the image");
  require(finite_nonneg(motion_sigma), "motion_sigma", "must be >= 0");
  require(rgb.modality == Expert::Rgb, "rgb", "rgb profile must target rgb");
  require(tir.modality == Expert::Tir, "tir", "tir profile must target tir");
  rgb.validate();
  tir.validate();
  fused.validate();
  metric.validate();
  for (const auto * p : {&rgb, &tir}) {
    for (const auto & iv : p->intervals) {
      if (iv.end > frames) {
        throw Error(
          ErrorCode::IntervalOutOfBounds, "interval ends past the last frame",
          std::string(to_string(p->modality)) + ".intervals");
      }
    }
  }
}

namespace
{
double reflect(double v, double lo, double hi)
{
  if (hi <= lo) {
    return lo;
  }
  const double span = hi - lo;
  double u = std::fmod(v - lo, 2.0 * span);
  if (u < 0.0) {
    u += 2.0 * span;
  }
  return u <= span ? lo + u : lo + 2.0 * span - u;
}
}  // namespace

SequenceAnnotation generate_trajectory(const ScenarioConfig & cfg, std::uint64_t seed, std::string id)
{
  cfg.validate();
  Rng rng(seed);
  std::uniform_real_distribution<double> size(cfg.size_min, cfg.size_max);
  std::normal_distribution<double> unit_normal(0.0, 1.0);

  const double w = size(rng);
  const double h = size(rng);
  const double lo_x = w * 0.5;
  const double hi_x = cfg.extent.width - w * 0.5;
  const double lo_y = h * 0.5;
  const double hi_y = cfg.extent.height - h * 0.5;
  double cx = std::uniform_real_distribution<double>(lo_x, hi_x)(rng);
  double cy = std::uniform_real_distribution<double>(lo_y, hi_y)(rng);

  std::vector<FrameTruth> frames;
  frames.reserve(cfg.frames);
  for (std::size_t i = 0; i < cfg.frames; ++i) {
    if (i > 0) {
      cx = reflect(cx + cfg.motion_sigma * unit_normal(rng), lo_x, hi_x);
      cy = reflect(cy + cfg.motion_sigma * unit_normal(rng), lo_y, hi_y);
    }
    frames.push_back(FrameTruth::present(Box::make(cx - w * 0.5, cy - h * 0.5, w, h)));
  }
  return SequenceAnnotation(std::move(id), Subset::Unspecified, std::move(frames));
}

double calibrate_confidence(const FramePrediction & pred, const FrameTruth & gt, double noise, Rng & rng)
{
  double c = iou(gt, pred);
  if (noise > 0.0) {
    c += std::uniform_real_distribution<double>(-noise, noise)(rng);
  }
  return std::clamp(c, 0.0, 1.0);
}

namespace
{
Box clip_into(const Box & b, const Extent & extent)
{
  const double x = std::clamp(b.x(), 0.0, std::max(0.0, extent.width - b.w()));
  const double y = std::clamp(b.y(), 0.0, std::max(0.0, extent.height - b.h()));
  return Box::make(x, y, b.w(), b.h());
}
}  // namespace

SimulatedStream degrade_modality(
  const SequenceAnnotation & gt, const DegradationProfile & profile, const Extent & extent,
  std::uint64_t seed)
{
  profile.validate();
  for (const auto & iv : profile.intervals) {
    if (iv.end > gt.size()) {
      throw Error(
        ErrorCode::IntervalOutOfBounds,
        "[" + std::to_string(iv.start) + ", " + std::to_string(iv.end) + ") exceeds " +
          std::to_string(gt.size()) + " frames",
        gt.id());
    }
  }

  Rng mask_rng(derive_seed(seed, kMaskDraws));
  Rng jitter_rng(derive_seed(seed, kJitterDraws));
  Rng degraded_rng(derive_seed(seed, kDegradedDraws));
  Rng conf_rng(derive_seed(seed, kConfidenceDraws));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> unit_normal(0.0, 1.0);

  SimulatedStream out;
  out.stream.expert = profile.modality;
  out.stream.predictions.reserve(gt.size());
  out.degraded.reserve(gt.size());

  const double sigma = profile.informative_noise;
  std::optional<Box> last;
  double fallback_w = std::max(1.0, extent.width * 0.1);
  double fallback_h = std::max(1.0, extent.height * 0.1);

  for (std::size_t i = 0; i < gt.size(); ++i) {
    const FrameTruth & g = gt.frames()[i];
    if (g.is_present()) {
      fallback_w = g.box()->w();
      fallback_h = g.box()->h();
    }

    // Every frame consumes the same draws whatever its state, which keeps
    // the streams aligned across profiles that differ only in degradation.
    const double mask_u = unit(mask_rng);
    const double n_x = unit_normal(jitter_rng);
    const double n_y = unit_normal(jitter_rng);
    const double n_w = unit_normal(jitter_rng);
    const double n_h = unit_normal(jitter_rng);
    const double u_x = unit(degraded_rng);
    const double u_y = unit(degraded_rng);
    const double d_x = unit_normal(degraded_rng);
    const double d_y = unit_normal(degraded_rng);

    const bool in_interval = std::any_of(
      profile.intervals.begin(), profile.intervals.end(),
      [i](const FrameInterval & iv) { return i >= iv.start && i < iv.end; });
    const bool degraded = in_interval || mask_u < profile.degraded_fraction;

    FramePrediction pred = FramePrediction::absence_declared();
    if (!degraded) {
      if (g.is_present()) {
        const Box & b = *g.box();
        const double w = b.w() * std::exp(sigma * n_w);
        const double h = b.h() * std::exp(sigma * n_h);
        const double x = b.x() + sigma * b.w() * n_x + (b.w() - w) * 0.5;
        const double y = b.y() + sigma * b.h() * n_y + (b.h() - h) * 0.5;
        pred = FramePrediction::present(Box::make(x, y, w, h));
      }
    } else {
      const double w = last ? last->w() : fallback_w;
      const double h = last ? last->h() : fallback_h;
      const Box random_box = Box::make(
        u_x * std::max(0.0, extent.width - w), u_y * std::max(0.0, extent.height - h), w, h);
      Box b = random_box;
      switch (profile.behavior) {
        case DegradedBehavior::UniformRandomBox:
          b = Box::make(
            u_x * std::max(0.0, extent.width - fallback_w),
            u_y * std::max(0.0, extent.height - fallback_h), fallback_w, fallback_h);
          break;
        case DegradedBehavior::FrozenBox:
          b = last ? *last : random_box;
          break;
        case DegradedBehavior::DriftingBox:
          if (last) {
            const double step = 0.25 * std::max(last->w(), last->h());
            b = clip_into(
              Box::make(last->x() + step * d_x, last->y() + step * d_y, last->w(), last->h()), extent);
          }
          break;
      }
      pred = FramePrediction::present(b);
    }
    if (pred.is_present()) {
      last = *pred.box();
    }
    const double conf = calibrate_confidence(pred, g, profile.confidence_noise, conf_rng);
    out.stream.predictions.push_back(pred.with_confidence(conf));
    out.degraded.push_back(degraded);
  }
  return out;
}

Box perturb_to_quality(const Box & gt, double quality, Rng & rng)
{
  const double q = std::clamp(quality, 0.0, 1.0);
  const int direction = std::uniform_int_distribution<int>(0, 3)(rng);
  if (gt.area() <= 0.0 || q >= 1.0) {
    return gt;
  }
  // Shifting by d along an axis of length L leaves IoU = (L - d) / (L + d).
  const double len = direction < 2 ? gt.w() : gt.h();
  const double d = len * (1.0 - q) / (1.0 + q);
  switch (direction) {
    case 0: return Box::make(gt.x() + d, gt.y(), gt.w(), gt.h());
    case 1: return Box::make(gt.x() - d, gt.y(), gt.w(), gt.h());
    case 2: return Box::make(gt.x(), gt.y() + d, gt.w(), gt.h());
    default: return Box::make(gt.x(), gt.y() - d, gt.w(), gt.h());
  }
}

ExpertStream synthesize_fused_expert(
  const SimulatedStream & rgb, const SimulatedStream & tir, const SequenceAnnotation & gt,
  const FusedQualityModel & model, std::uint64_t seed)
{
  model.validate();
  check_paired(gt, rgb.stream);
  check_paired(gt, tir.stream);
  if (rgb.degraded.size() != gt.size() || tir.degraded.size() != gt.size()) {
    throw Error(ErrorCode::LengthMismatch, "degradation masks do not match the sequence", gt.id());
  }

  Rng shape_rng(derive_seed(seed, kJitterDraws));
  Rng conf_rng(derive_seed(seed, kConfidenceDraws));

  ExpertStream out{Expert::Rgbt, {}};
  out.predictions.reserve(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const FrameTruth & g = gt.frames()[i];
    const FramePrediction & p_rgb = rgb.stream.predictions[i];
    const FramePrediction & p_tir = tir.stream.predictions[i];
    const double q_rgb = iou(g, p_rgb);
    const double q_tir = iou(g, p_tir);

    double target = 0.0;
    const bool d_rgb = rgb.degraded[i];
    const bool d_tir = tir.degraded[i];
    if (!d_rgb && !d_tir) {
      target = std::min(1.0, std::max(q_rgb, q_tir) + model.beta);
    } else if (d_rgb != d_tir) {
      const double informative = d_rgb ? q_tir : q_rgb;
      const double degraded = d_rgb ? q_rgb : q_tir;
      target = model.alpha * informative + (1.0 - model.alpha) * degraded;
    } else {
      target = 0.5 * (q_rgb + q_tir);
    }

    FramePrediction pred = FramePrediction::absence_declared();
    if (g.is_present()) {
      pred = FramePrediction::present(perturb_to_quality(*g.box(), target, shape_rng));
    } else {
      // Nothing to perturb; follow whichever input is closer to the truth.
      pred = (q_rgb >= q_tir ? p_rgb : p_tir).with_confidence(std::nullopt);
      std::uniform_int_distribution<int>(0, 3)(shape_rng);
    }
    const double conf = calibrate_confidence(pred, g, model.confidence_noise, conf_rng);
    out.predictions.push_back(pred.with_confidence(conf));
  }
  return out;
}

std::vector<FramePrediction> oracle_best_selection(
  const ExpertStream & rgb, const ExpertStream & tir, const ExpertStream & rgbt,
  const SequenceAnnotation & gt, const TiePolicy & tie)
{
  check_paired(gt, rgb);
  check_paired(gt, tir);
  check_paired(gt, rgbt);
  const std::array<const ExpertStream *, 3> by_expert = {&rgb, &tir, &rgbt};

  std::vector<FramePrediction> out;
  out.reserve(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) {
    Confidences quality{};
    for (Expert e : kAllExperts) {
      quality[index_of(e)] = iou(gt.frames()[i], by_expert[index_of(e)]->predictions[i]);
    }
    const Expert best = select_expert(quality[0], quality[1], quality[2], tie);
    out.push_back(by_expert[index_of(best)]->predictions[i]);
  }
  return out;
}

std::string_view to_string(Policy policy)
{
  switch (policy) {
    case Policy::MoeSelection: return "moe-selection";
    case Policy::AlwaysFuse: return "always-fuse";
    case Policy::RgbOnly: return "rgb-only";
    case Policy::TirOnly: return "tir-only";
    case Policy::Oracle: return "oracle";
  }
  return "oracle";
}

Policy parse_policy(std::string_view name)
{
  for (Policy p : kAllPolicies) {
    if (to_string(p) == name) {
      return p;
    }
  }
  throw Error(ErrorCode::TypeError, "unknown policy", std::string(name));
}

const BenchmarkScores & ScenarioReport::of(Policy policy) const
{
  for (const auto & p : policies) {
    if (p.policy == policy) {
      return p.scores;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "policy missing from report", std::string(to_string(policy)));
}

ScenarioReport run_scenario(const ScenarioConfig & cfg)
{
  cfg.validate();

  std::vector<ManifestEntry> entries;
  entries.reserve(cfg.sequences);
  std::array<SequenceResults, kAllPolicies.size()> results;
  std::vector<SelectionRecord> all_records;
  all_records.reserve(cfg.sequences * cfg.frames);

  for (std::size_t j = 0; j < cfg.sequences; ++j) {
    const std::uint64_t seq_seed = derive_seed(cfg.seed, j);
    char id[32];
    std::snprintf(id, sizeof(id), "seq%04zu", j);

    SequenceAnnotation gt = generate_trajectory(cfg, derive_seed(seq_seed, kTrajectory), id);
    const SimulatedStream rgb = degrade_modality(gt, cfg.rgb, cfg.extent, derive_seed(seq_seed, kRgbStream));
    const SimulatedStream tir = degrade_modality(gt, cfg.tir, cfg.extent, derive_seed(seq_seed, kTirStream));
    const ExpertStream fused =
      synthesize_fused_expert(rgb, tir, gt, cfg.fused, derive_seed(seq_seed, kFusedStream));

    FusionResult moe = fuse_streams(rgb.stream, tir.stream, fused, cfg.tie);
    all_records.insert(all_records.end(), moe.trace.records().begin(), moe.trace.records().end());

    results[0][gt.id()] = std::move(moe.fused);
    results[1][gt.id()] = fused.predictions;
    results[2][gt.id()] = rgb.stream.predictions;
    results[3][gt.id()] = tir.stream.predictions;
    results[4][gt.id()] = oracle_best_selection(rgb.stream, tir.stream, fused, gt, cfg.tie);
    entries.push_back({std::move(gt), {}});
  }

  const DatasetManifest manifest(cfg.name, std::move(entries));
  ScenarioReport report;
  report.name = cfg.name;
  report.seed = cfg.seed;
  report.sequences = cfg.sequences;
  report.frames = cfg.frames;
  for (std::size_t k = 0; k < kAllPolicies.size(); ++k) {
    report.policies.push_back({kAllPolicies[k], benchmark_scores(manifest, results[k], cfg.metric)});
  }
  report.moe_ratios = selection_ratios(SelectionTrace(std::move(all_records)));
  return report;
}

}  // namespace rgbtfuse
