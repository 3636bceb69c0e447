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

#ifndef RGBTFUSE__TYPES_HPP_
#define RGBTFUSE__TYPES_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rgbtfuse
{

struct Point
{
  double x;
  double y;

  friend bool operator==(const Point &, const Point &) = default;
};

/// Axis-aligned rectangle in pixel space. (x, y) is the top-left corner and
/// y grows downward. Coordinates are taken verbatim from annotation files, so
/// no 0/1-indexing adjustment is ever applied.
class Box
{
public:
  /// Throws NonFinite or NegativeExtent. A zero-area box is valid.
  static Box make(double x, double y, double w, double h);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double w() const noexcept { return w_; }
  double h() const noexcept { return h_; }
  double area() const noexcept { return w_ * h_; }
  Point center() const noexcept { return {x_ + w_ * 0.5, y_ + h_ * 0.5}; }

  friend bool operator==(const Box &, const Box &) = default;

private:
  Box(double x, double y, double w, double h) : x_(x), y_(y), w_(w), h_(h) {}

  double x_;
  double y_;
  double w_;
  double h_;
};

Box make_box(double x, double y, double w, double h);
Point center(const Box & b);

/// Groundtruth for one frame: the target is either visible with a box or
/// absent. The all-zero file sentinel never survives past the parser.
class FrameTruth
{
public:
  static FrameTruth present(const Box & box) { return FrameTruth(box); }
  static FrameTruth absent() { return FrameTruth(std::nullopt); }

  bool is_present() const noexcept { return box_.has_value(); }
  const std::optional<Box> & box() const noexcept { return box_; }

  friend bool operator==(const FrameTruth &, const FrameTruth &) = default;

private:
  explicit FrameTruth(std::optional<Box> box) : box_(box) {}
  std::optional<Box> box_;
};

/// A tracker's output for one frame. Either variant may carry a confidence;
/// a declared absence still has a score when it came from an expert.
class FramePrediction
{
public:
  static FramePrediction present(const Box & box, std::optional<double> confidence = std::nullopt);
  static FramePrediction absence_declared(std::optional<double> confidence = std::nullopt);

  bool is_present() const noexcept { return box_.has_value(); }
  const std::optional<Box> & box() const noexcept { return box_; }
  const std::optional<double> & confidence() const noexcept { return confidence_; }

  FramePrediction with_confidence(std::optional<double> confidence) const;

  friend bool operator==(const FramePrediction &, const FramePrediction &) = default;

private:
  FramePrediction(std::optional<Box> box, std::optional<double> confidence)
  : box_(box), confidence_(confidence)
  {
  }
  std::optional<Box> box_;
  std::optional<double> confidence_;
};

enum class Subset { RgbDominant, TirDominant, Unspecified };

std::string_view to_string(Subset subset);
/// Accepts the manifest tags "rgb", "tir" and "none".
Subset parse_subset_tag(std::string_view tag);

class SequenceAnnotation
{
public:
  /// Throws InvalidArgument when `frames` is empty.
  SequenceAnnotation(std::string id, Subset subset, std::vector<FrameTruth> frames);

  const std::string & id() const noexcept { return id_; }
  Subset subset() const noexcept { return subset_; }
  const std::vector<FrameTruth> & frames() const noexcept { return frames_; }
  std::size_t size() const noexcept { return frames_.size(); }

private:
  std::string id_;
  Subset subset_;
  std::vector<FrameTruth> frames_;
};

enum class Expert { Rgb, Tir, Rgbt };

inline constexpr std::array<Expert, 3> kAllExperts = {Expert::Rgb, Expert::Tir, Expert::Rgbt};

std::string_view to_string(Expert expert);
Expert parse_expert(std::string_view name);
constexpr std::size_t index_of(Expert e) noexcept { return static_cast<std::size_t>(e); }

struct ExpertStream
{
  Expert expert;
  std::vector<FramePrediction> predictions;

  std::size_t size() const noexcept { return predictions.size(); }
};

/// Throws LengthMismatch when the stream and its sequence disagree on length.
void check_paired(const SequenceAnnotation & sequence, const ExpertStream & stream);

struct ManifestEntry
{
  SequenceAnnotation sequence;
  std::filesystem::path groundtruth_path;
};

class DatasetManifest
{
public:
  /// Throws EmptyManifest or DuplicateSequenceId.
  DatasetManifest(std::string name, std::vector<ManifestEntry> entries);

  const std::string & name() const noexcept { return name_; }
  const std::vector<ManifestEntry> & entries() const noexcept { return entries_; }
  std::size_t m() const noexcept { return entries_.size(); }
  std::size_t total_frames() const noexcept;

  /// Copy restricted to one subset; throws EmptySubset if nothing matches.
  DatasetManifest filtered(Subset subset) const;

private:
  std::string name_;
  std::vector<ManifestEntry> entries_;
};

}  // namespace rgbtfuse

#endif  // RGBTFUSE__TYPES_HPP_
