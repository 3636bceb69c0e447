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

#ifndef RGBTFUSE__IO_HPP_
#define RGBTFUSE__IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rgbtfuse/metrics.hpp"
#include "rgbtfuse/simulator.hpp"
#include "rgbtfuse/types.hpp"

namespace rgbtfuse
{

// Box files hold one frame per line, "x y w h" separated by commas, spaces or
// tabs; blank lines are skipped and an all-zero row means "absent". Numbers
// are decimal reals read verbatim (no index shifting, no locale).
//
// Confidence sidecars hold one real per line and sit next to the prediction
// file with the extension replaced by ".conf".

/// Locale-independent decimal real; nullopt unless the whole token is a
/// finite number.
std::optional<double> parse_real(std::string_view token);

std::vector<FrameTruth> parse_groundtruth(std::string_view text);

/// Throws LengthMismatch when the sidecar line count differs from the
/// prediction count.
std::vector<FramePrediction> parse_predictions(
  std::string_view text, std::optional<std::string_view> confidences = std::nullopt);

std::vector<double> parse_confidences(std::string_view text);

/// Shortest round-trip decimal form, e.g. 10.5 -> "10.5", 20.0 -> "20".
std::string format_real(double v);

std::string write_groundtruth(const std::vector<FrameTruth> & frames);
std::string write_predictions(const std::vector<FramePrediction> & predictions);
/// Throws MissingConfidence if any prediction lacks a score.
std::string write_confidences(const std::vector<FramePrediction> & predictions);

std::string read_text_file(const std::filesystem::path & path);
void write_text_file(const std::filesystem::path & path, std::string_view text);

/// "<stem>.conf" next to a prediction file.
std::filesystem::path sidecar_path(const std::filesystem::path & predictions);

/// Reads a prediction file and, when present, its sidecar. An explicit
/// `confidences` path must exist.
ExpertStream load_expert_stream(
  Expert expert, const std::filesystem::path & predictions,
  const std::optional<std::filesystem::path> & confidences = std::nullopt);

/// Manifest: key-value lines; "benchmark = <name>" once and
/// "sequence = <id>, <groundtruth path>[, rgb|tir|none]" per sequence.
/// Paths are relative to the manifest's directory.
DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path & base_dir);
DatasetManifest load_manifest(const std::filesystem::path & path);

/// One "<id>.txt" (plus optional "<id>.conf") per manifest sequence.
SequenceResults load_results(const std::filesystem::path & dir, const DatasetManifest & manifest);

/// Config files: "key = value" lines, '#' starts a comment. Unknown or
/// repeated keys are rejected; omitted keys keep their defaults.
MetricConfig parse_metric_config(std::string_view text);
MetricConfig load_metric_config(const std::filesystem::path & path);
ScenarioConfig parse_scenario_config(std::string_view text);
ScenarioConfig load_scenario_config(const std::filesystem::path & path);

}  // namespace rgbtfuse

#endif  // RGBTFUSE__IO_HPP_
