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

#include "rgbtfuse/types.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "rgbtfuse/error.hpp"

namespace rgbtfuse
{

Box Box::make(double x, double y, double w, double h)
{
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(w) || !std::isfinite(h)) {
    throw Error(ErrorCode::NonFinite, "box coordinates must be finite");
  }
  if (w < 0.0 || h < 0.0) {
    throw Error(ErrorCode::NegativeExtent, "box width and height must be non-negative");
  }
  return Box(x, y, w, h);
}

Box make_box(double x, double y, double w, double h) { return Box::make(x, y, w, h); }

Point center(const Box & b) { return b.center(); }

FramePrediction FramePrediction::present(const Box & box, std::optional<double> confidence)
{
  if (confidence && !std::isfinite(*confidence)) {
    throw Error(ErrorCode::NonFinite, "confidence must be finite");
  }
  return FramePrediction(box, confidence);
}

FramePrediction FramePrediction::absence_declared(std::optional<double> confidence)
{
  if (confidence && !std::isfinite(*confidence)) {
    throw Error(ErrorCode::NonFinite, "confidence must be finite");
  }
  return FramePrediction(std::nullopt, confidence);
}

FramePrediction FramePrediction::with_confidence(std::optional<double> confidence) const
{
  return box_ ? present(*box_, confidence) : absence_declared(confidence);
}

std::string_view to_string(Subset subset)
{
  switch (subset) {
    case Subset::RgbDominant: return "rgb";
    case Subset::TirDominant: return "tir";
    case Subset::Unspecified: return "none";
  }
  return "none";
}

Subset parse_subset_tag(std::string_view tag)
{
  if (tag == "rgb") return Subset::RgbDominant;
  if (tag == "tir") return Subset::TirDominant;
  if (tag == "none" || tag.empty()) return Subset::Unspecified;
  throw Error(ErrorCode::TypeError, "subset tag must be one of rgb, tir, none", std::string(tag));
}

SequenceAnnotation::SequenceAnnotation(std::string id, Subset subset, std::vector<FrameTruth> frames)
: id_(std::move(id)), subset_(subset), frames_(std::move(frames))
{
  if (frames_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a sequence needs at least one frame", id_);
  }
}

std::string_view to_string(Expert expert)
{
  switch (expert) {
    case Expert::Rgb: return "rgb";
    case Expert::Tir: return "tir";
    case Expert::Rgbt: return "rgbt";
  }
  return "rgbt";
}

Expert parse_expert(std::string_view name)
{
  if (name == "rgb") return Expert::Rgb;
  if (name == "tir") return Expert::Tir;
  if (name == "rgbt") return Expert::Rgbt;
  throw Error(ErrorCode::TypeError, "expert must be one of rgb, tir, rgbt", std::string(name));
}

void check_paired(const SequenceAnnotation & sequence, const ExpertStream & stream)
{
  if (sequence.size() != stream.size()) {
    throw Error(
      ErrorCode::LengthMismatch,
      std::string(to_string(stream.expert)) + " stream has " + std::to_string(stream.size()) +
        " frames, groundtruth has " + std::to_string(sequence.size()),
      sequence.id());
  }
}

DatasetManifest::DatasetManifest(std::string name, std::vector<ManifestEntry> entries)
: name_(std::move(name)), entries_(std::move(entries))
{
  if (entries_.empty()) {
    throw Error(ErrorCode::EmptyManifest, "manifest lists no sequences", name_);
  }
  std::unordered_set<std::string> seen;
  for (const auto & e : entries_) {
    if (!seen.insert(e.sequence.id()).second) {
      throw Error(ErrorCode::DuplicateSequenceId, "sequence id appears twice", e.sequence.id());
    }
  }
}

std::size_t DatasetManifest::total_frames() const noexcept
{
  return std::accumulate(
    entries_.begin(), entries_.end(), std::size_t{0},
    [](std::size_t acc, const ManifestEntry & e) { return acc + e.sequence.size(); });
}

DatasetManifest DatasetManifest::filtered(Subset subset) const
{
  std::vector<ManifestEntry> kept;
  for (const auto & e : entries_) {
    if (e.sequence.subset() == subset) {
      kept.push_back(e);
    }
  }
  if (kept.empty()) {
    throw Error(ErrorCode::EmptySubset, "no sequences carry this subset tag", std::string(to_string(subset)));
  }
  return DatasetManifest(name_, std::move(kept));
}

}  // namespace rgbtfuse
