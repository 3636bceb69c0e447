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

#include "rgbtfuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rgbtfuse/error.hpp"

namespace rgbtfuse
{

ScoreMap::ScoreMap(std::size_t rows, std::size_t cols, std::vector<double> values)
: rows_(rows), cols_(cols), values_(std::move(values))
{
  if (rows_ == 0 || cols_ == 0 || values_.empty()) {
    throw Error(ErrorCode::EmptyMap, "score map has no cells");
  }
  if (values_.size() != rows_ * cols_) {
    throw Error(ErrorCode::InvalidArgument, "score map size does not match rows * cols");
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::NonFinite, "score map values must be finite");
  }
}

double confidence_from_score_map(const ScoreMap & m)
{
  return *std::max_element(m.values().begin(), m.values().end());
}

TiePolicy::TiePolicy(std::array<Expert, 3> order) : order_(order)
{
  for (Expert e : kAllExperts) {
    if (std::count(order_.begin(), order_.end(), e) != 1) {
      throw Error(ErrorCode::InvalidArgument, "tie policy must list each expert exactly once");
    }
  }
}

TiePolicy TiePolicy::parse(std::string_view text)
{
  if (text == "rgbt-first") return TiePolicy({Expert::Rgbt, Expert::Tir, Expert::Rgb});
  if (text == "tir-first") return TiePolicy({Expert::Tir, Expert::Rgbt, Expert::Rgb});
  if (text == "rgb-first") return TiePolicy({Expert::Rgb, Expert::Rgbt, Expert::Tir});

  std::array<Expert, 3> order{};
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find('>', pos), text.size());
    if (n == order.size()) {
      throw Error(ErrorCode::TypeError, "tie policy lists more than three experts", std::string(text));
    }
    order[n++] = parse_expert(text.substr(pos, next - pos));
    pos = next + 1;
  }
  if (n != order.size()) {
    throw Error(ErrorCode::TypeError, "tie policy must name all three experts", std::string(text));
  }
  return TiePolicy(order);
}

std::string TiePolicy::to_string() const
{
  std::string out;
  for (Expert e : order_) {
    if (!out.empty()) out += '>';
    out += rgbtfuse::to_string(e);
  }
  return out;
}

namespace
{
Expert argmax(const Confidences & cs, const TiePolicy & tie)
{
  const double mc = *std::max_element(cs.begin(), cs.end());
  for (Expert e : tie.order()) {
    if (cs[index_of(e)] == mc) {
      return e;
    }
  }
  return tie.order().front();  // unreachable for finite input
}
}  // namespace

Expert select_expert(double cs_rgb, double cs_tir, double cs_rgbt, const TiePolicy & tie)
{
  const Confidences cs = {cs_rgb, cs_tir, cs_rgbt};
  if (!std::all_of(cs.begin(), cs.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::NonFinite, "confidence scores must be finite");
  }
  return argmax(cs, tie);
}

SelectionTrace::SelectionTrace(std::vector<SelectionRecord> records) : records_(std::move(records))
{
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto & r = records_[i];
    const double mc = *std::max_element(r.cs.begin(), r.cs.end());
    if (r.mc != mc || r.cs[index_of(r.chosen)] != mc) {
      throw Error(
        ErrorCode::InvalidArgument, "record is not a max-confidence selection",
        "frame " + std::to_string(i));
    }
  }
}

FusionResult fuse_streams(
  const ExpertStream & rgb, const ExpertStream & tir, const ExpertStream & rgbt,
  const TiePolicy & tie)
{
  const std::size_t t = rgb.size();
  if (tir.size() != t || rgbt.size() != t) {
    throw Error(
      ErrorCode::LengthMismatch, "expert streams have " + std::to_string(rgb.size()) + ", " +
        std::to_string(tir.size()) + " and " + std::to_string(rgbt.size()) + " frames");
  }
  const std::array<const ExpertStream *, 3> by_expert = {&rgb, &tir, &rgbt};

  FusionResult out;
  out.fused.reserve(t);
  std::vector<SelectionRecord> records;
  records.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    Confidences cs{};
    for (Expert e : kAllExperts) {
      const auto & conf = by_expert[index_of(e)]->predictions[i].confidence();
      if (!conf) {
        throw Error(
          ErrorCode::MissingConfidence, "frame " + std::to_string(i) + " has no confidence",
          std::string(to_string(e)));
      }
      cs[index_of(e)] = *conf;
    }
    const Expert chosen = argmax(cs, tie);
    const double mc = cs[index_of(chosen)];
    out.fused.push_back(by_expert[index_of(chosen)]->predictions[i]);
    records.push_back({chosen, mc, cs});
  }
  out.trace = SelectionTrace(std::move(records));
  return out;
}

SelectionRatios selection_ratios(const SelectionTrace & trace)
{
  if (trace.empty()) {
    throw Error(ErrorCode::EmptyTrace, "selection trace has no frames");
  }
  std::array<std::size_t, 3> counts{};
  for (const auto & r : trace.records()) {
    ++counts[index_of(r.chosen)];
  }
  const auto n = static_cast<double>(trace.size());
  return {
    static_cast<double>(counts[index_of(Expert::Rgb)]) / n,
    static_cast<double>(counts[index_of(Expert::Tir)]) / n,
    static_cast<double>(counts[index_of(Expert::Rgbt)]) / n};
}

double aggregate_expert_losses(double l_rgb, double l_tir, double l_rgbt)
{
  for (double l : {l_rgb, l_tir, l_rgbt}) {
    if (!std::isfinite(l)) {
      throw Error(ErrorCode::NonFinite, "expert losses must be finite");
    }
    if (l < 0.0) {
      throw Error(ErrorCode::NegativeLoss, "expert losses must be non-negative");
    }
  }
  // Summed in ascending order so the result is bit-identical under any
  // permutation of the arguments.
  std::array<double, 3> l = {l_rgb, l_tir, l_rgbt};
  std::sort(l.begin(), l.end());
  return (l[0] + l[1] + l[2]) / 3.0;
}

}  // namespace rgbtfuse
