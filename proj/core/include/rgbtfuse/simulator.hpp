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

#ifndef RGBTFUSE__SIMULATOR_HPP_
#define RGBTFUSE__SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rgbtfuse/fusion.hpp"
#include "rgbtfuse/metrics.hpp"
#include "rgbtfuse/types.hpp"

namespace rgbtfuse
{

using Rng = std::mt19937_64;

/// splitmix64 finalizer over (master, index); gives each sequence and each
/// random stream its own seed so results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct Extent
{
  double width = 640.0;
  double height = 480.0;
};

enum class DegradedBehavior { UniformRandomBox, FrozenBox, DriftingBox };

std::string_view to_string(DegradedBehavior behavior);
DegradedBehavior parse_degraded_behavior(std::string_view name);

/// Half-open frame range [start, end).
struct FrameInterval
{
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const FrameInterval &, const FrameInterval &) = default;
};

/// How one single-modality expert behaves. A frame is degraded when it lies
/// in any interval, or when its per-frame uniform draw falls below
/// `degraded_fraction`; the draw is made for every frame, so for a fixed seed
/// the degraded set only grows as the fraction grows.
struct DegradationProfile
{
  Expert modality = Expert::Rgb;
  std::vector<FrameInterval> intervals;
  double degraded_fraction = 0.0;
  /// Standard deviation of the informative-frame jitter, as a fraction of the
  /// box width/height.
  double informative_noise = 0.05;
  DegradedBehavior behavior = DegradedBehavior::UniformRandomBox;
  /// Half-width of the uniform miscalibration noise added to confidences.
  double confidence_noise = 0.0;

  void validate() const;
};

/// Quality law for the synthetic fused (RGBT) expert. With both inputs
/// informative the fused target is min(1, best + beta); with one degraded it
/// is alpha * informative + (1 - alpha) * degraded; with both degraded it is
/// the mean of the two.
struct FusedQualityModel
{
  double alpha = 0.5;
  double beta = 0.05;
  double confidence_noise = 0.0;

  void validate() const;
};

/// Largest allowed |IoU(fused, gt) - target| for a synthesized fused box.
inline constexpr double kFusedQualityTolerance = 0.05;

struct ScenarioConfig
{
  std::string name = "scenario";
  std::size_t sequences = 10;
  std::size_t frames = 100;
  Extent extent;
  double size_min = 20.0;
  double size_max = 80.0;
  /// Per-frame standard deviation (pixels) of the centre random walk.
  double motion_sigma = 4.0;
  std::uint64_t seed = 1;
  DegradationProfile rgb{Expert::Rgb, {}};
  DegradationProfile tir{Expert::Tir, {}};
  FusedQualityModel fused;
  MetricConfig metric;
  TiePolicy tie;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Gaussian random walk of the box centre with reflection at the image
/// border; the size is drawn once per sequence.
SequenceAnnotation generate_trajectory(
  const ScenarioConfig & cfg, std::uint64_t seed, std::string id = "seq0000");

struct SimulatedStream
{
  ExpertStream stream;
  std::vector<bool> degraded;
};

/// Throws IntervalOutOfBounds if an interval exceeds the sequence.
SimulatedStream degrade_modality(
  const SequenceAnnotation & gt, const DegradationProfile & profile, const Extent & extent,
  std::uint64_t seed);

/// clamp(IoU(gt, pred) + U[-noise, +noise], 0, 1). No draw is made when
/// noise == 0.
double calibrate_confidence(
  const FramePrediction & pred, const FrameTruth & gt, double noise, Rng & rng);

/// A copy of `gt` shifted along one randomly chosen axis direction so that
/// its IoU with `gt` equals `quality` (clamped to [0, 1]).
Box perturb_to_quality(const Box & gt, double quality, Rng & rng);

/// Throws LengthMismatch.
ExpertStream synthesize_fused_expert(
  const SimulatedStream & rgb, const SimulatedStream & tir, const SequenceAnnotation & gt,
  const FusedQualityModel & model, std::uint64_t seed);

/// Per frame, the prediction with the highest true IoU against `gt`.
std::vector<FramePrediction> oracle_best_selection(
  const ExpertStream & rgb, const ExpertStream & tir, const ExpertStream & rgbt,
  const SequenceAnnotation & gt, const TiePolicy & tie = {});

enum class Policy { MoeSelection, AlwaysFuse, RgbOnly, TirOnly, Oracle };

inline constexpr std::array<Policy, 5> kAllPolicies = {
  Policy::MoeSelection, Policy::AlwaysFuse, Policy::RgbOnly, Policy::TirOnly, Policy::Oracle};

std::string_view to_string(Policy policy);
Policy parse_policy(std::string_view name);

struct PolicyScores
{
  Policy policy;
  BenchmarkScores scores;
};

struct ScenarioReport
{
  std::string name;
  std::uint64_t seed = 0;
  std::size_t sequences = 0;
  std::size_t frames = 0;
  /// In kAllPolicies order.
  std::vector<PolicyScores> policies;
  /// Selection ratios of the MoE policy over every simulated frame.
  SelectionRatios moe_ratios;

  const BenchmarkScores & of(Policy policy) const;
};

ScenarioReport run_scenario(const ScenarioConfig & cfg);

}  // namespace rgbtfuse

#endif  // RGBTFUSE__SIMULATOR_HPP_
