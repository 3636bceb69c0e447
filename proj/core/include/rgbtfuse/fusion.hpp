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

#ifndef RGBTFUSE__FUSION_HPP_
#define RGBTFUSE__FUSION_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rgbtfuse/types.hpp"

namespace rgbtfuse
{

/// Row-major grid of classification scores produced by one tracking head.
class ScoreMap
{
public:
  /// Throws EmptyMap for a zero-sized grid, InvalidArgument if
  /// values.size() != rows * cols, NonFinite for NaN/inf entries.
  ScoreMap(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t r, std::size_t c) const { return values_.at(r * cols_ + c); }
  const std::vector<double> & values() const noexcept { return values_; }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Peak of the score map, used as the head's confidence for the frame.
double confidence_from_score_map(const ScoreMap & m);

/// Preference order used only to break exact confidence ties; the first
/// expert listed wins. Default: RGBT, then TIR, then RGB.
class TiePolicy
{
public:
  TiePolicy() = default;
  /// Throws InvalidArgument unless `order` is a permutation of the experts.
  explicit TiePolicy(std::array<Expert, 3> order);

  /// Accepts "rgbt-first", "tir-first", "rgb-first" or an explicit
  /// order such as "tir>rgbt>rgb".
  static TiePolicy parse(std::string_view text);

  const std::array<Expert, 3> & order() const noexcept { return order_; }
  std::string to_string() const;

private:
  std::array<Expert, 3> order_ = {Expert::Rgbt, Expert::Tir, Expert::Rgb};
};

/// Confidences indexed by index_of(Expert): {rgb, tir, rgbt}.
using Confidences = std::array<double, 3>;

Expert select_expert(double cs_rgb, double cs_tir, double cs_rgbt, const TiePolicy & tie = {});

struct SelectionRecord
{
  Expert chosen;
  double mc;
  Confidences cs;

  friend bool operator==(const SelectionRecord &, const SelectionRecord &) = default;
};

/// Frame-ordered record of which expert produced each fused prediction.
class SelectionTrace
{
public:
  SelectionTrace() = default;
  /// Throws InvalidArgument if any record's mc is not the max of its cs or
  /// the chosen expert does not attain it.
  explicit SelectionTrace(std::vector<SelectionRecord> records);

  const std::vector<SelectionRecord> & records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  friend bool operator==(const SelectionTrace &, const SelectionTrace &) = default;

private:
  std::vector<SelectionRecord> records_;
};

struct FusionResult
{
  std::vector<FramePrediction> fused;
  SelectionTrace trace;
};

/// Per frame, forwards the prediction of the highest-confidence expert. The
/// fused prediction carries the winning confidence.
FusionResult fuse_streams(
  const ExpertStream & rgb, const ExpertStream & tir, const ExpertStream & rgbt,
  const TiePolicy & tie = {});

struct SelectionRatios
{
  double rgb = 0.0;
  double tir = 0.0;
  double rgbt = 0.0;
};

SelectionRatios selection_ratios(const SelectionTrace & trace);

/// Training objective of the three-head model: the mean of the per-expert losses.
double aggregate_expert_losses(double l_rgb, double l_tir, double l_rgbt);

}  // namespace rgbtfuse

#endif  // RGBTFUSE__FUSION_HPP_
