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

#include "rgbtfuse/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "rgbtfuse/error.hpp"

namespace rgbtfuse
{

namespace
{
constexpr std::string_view kWhitespace = " \t\r\n";

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(kWhitespace);
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(kWhitespace);
  return s.substr(b, e - b + 1);
}

// Splits on '\n' and reports 1-based physical line numbers.
template <typename Fn>
void for_each_line(std::string_view text, Fn && fn)
{
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    ++line_no;
    fn(text.substr(pos, end - pos), line_no);
    pos = end + 1;
  }
}

std::optional<double> to_real(std::string_view token)
{
  double v = 0.0;
  const char * first = token.data();
  const char * last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || token.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
  std::vector<std::string_view> fields;
  if (line.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (true) {
      const std::size_t c = line.find(',', pos);
      fields.push_back(trim(line.substr(pos, c == std::string_view::npos ? line.npos : c - pos)));
      if (c == std::string_view::npos) break;
      pos = c + 1;
    }
    return fields;
  }
  std::size_t pos = 0;
  while (true) {
    const std::size_t b = line.find_first_not_of(kWhitespace, pos);
    if (b == std::string_view::npos) break;
    const std::size_t e = line.find_first_of(kWhitespace, b);
    fields.push_back(line.substr(b, e == std::string_view::npos ? line.npos : e - b));
    if (e == std::string_view::npos) break;
    pos = e;
  }
  return fields;
}

struct RawRow
{
  std::size_t line;
  std::optional<Box> box;  // nullopt for the all-zero sentinel
};

std::vector<RawRow> parse_box_rows(std::string_view text)
{
  std::vector<RawRow> rows;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    const std::string_view line = trim(raw);
    if (line.empty()) {
      return;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw Error(ErrorCode::MalformedLine, "expected 4 numbers", {}, line_no);
    }
    double v[4];
    for (std::size_t k = 0; k < 4; ++k) {
      const auto parsed = to_real(fields[k]);
      if (!parsed) {
        throw Error(ErrorCode::MalformedLine, "not a number: '" + std::string(fields[k]) + "'", {}, line_no);
      }
      v[k] = *parsed;
    }
    if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0 && v[3] == 0.0) {
      rows.push_back({line_no, std::nullopt});
      return;
    }
    if (v[2] < 0.0 || v[3] < 0.0) {
      throw Error(ErrorCode::NegativeExtent, "negative width or height", {}, line_no);
    }
    rows.push_back({line_no, Box::make(v[0], v[1], v[2], v[3])});
  });
  return rows;
}
}  // namespace

std::optional<double> parse_real(std::string_view token) { return to_real(token); }

std::vector<FrameTruth> parse_groundtruth(std::string_view text)
{
  std::vector<FrameTruth> frames;
  for (const auto & row : parse_box_rows(text)) {
    frames.push_back(row.box ? FrameTruth::present(*row.box) : FrameTruth::absent());
  }
  return frames;
}

std::vector<double> parse_confidences(std::string_view text)
{
  std::vector<double> out;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    const std::string_view line = trim(raw);
    if (line.empty()) {
      return;
    }
    const auto v = to_real(line);
    if (!v) {
      throw Error(ErrorCode::MalformedLine, "not a confidence value: '" + std::string(line) + "'", {}, line_no);
    }
    out.push_back(*v);
  });
  return out;
}

std::vector<FramePrediction> parse_predictions(
  std::string_view text, std::optional<std::string_view> confidences)
{
  const auto rows = parse_box_rows(text);
  std::vector<double> conf;
  if (confidences) {
    conf = parse_confidences(*confidences);
    if (conf.size() != rows.size()) {
      throw Error(
        ErrorCode::LengthMismatch, std::to_string(rows.size()) + " predictions but " +
          std::to_string(conf.size()) + " confidences");
    }
  }
  std::vector<FramePrediction> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::optional<double> c = confidences ? std::optional<double>(conf[i]) : std::nullopt;
    out.push_back(
      rows[i].box ? FramePrediction::present(*rows[i].box, c) : FramePrediction::absence_declared(c));
  }
  return out;
}

std::string format_real(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    throw Error(ErrorCode::NonFinite, "cannot format value");
  }
  std::string s(buf, ptr);
  return s == "-0" ? "0" : s;
}

namespace
{
void append_box_line(std::string & out, const std::optional<Box> & b)
{
  if (!b) {
    out += "0,0,0,0\n";
    return;
  }
  out += format_real(b->x());
  out += ',';
  out += format_real(b->y());
  out += ',';
  out += format_real(b->w());
  out += ',';
  out += format_real(b->h());
  out += '\n';
}
}  // namespace

std::string write_groundtruth(const std::vector<FrameTruth> & frames)
{
  std::string out;
  for (const auto & f : frames) {
    append_box_line(out, f.box());
  }
  return out;
}

std::string write_predictions(const std::vector<FramePrediction> & predictions)
{
  std::string out;
  for (const auto & p : predictions) {
    append_box_line(out, p.box());
  }
  return out;
}

std::string write_confidences(const std::vector<FramePrediction> & predictions)
{
  std::string out;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!predictions[i].confidence()) {
      throw Error(ErrorCode::MissingConfidence, "frame " + std::to_string(i) + " has no confidence");
    }
    out += format_real(*predictions[i].confidence());
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path)) {
    throw Error(ErrorCode::MissingFile, "cannot open file", path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path & path, std::string_view text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::MissingFile, "cannot write file", path.string());
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::filesystem::path sidecar_path(const std::filesystem::path & predictions)
{
  auto p = predictions;
  p.replace_extension(".conf");
  return p;
}

namespace
{
// Re-raises a parse error with the file path attached as subject.
template <typename Fn>
auto with_file_context(const std::filesystem::path & path, Fn && fn)
{
  try {
    return fn();
  } catch (const Error & e) {
    if (!e.subject().empty()) {
      throw;
    }
    throw Error(e.code(), e.message(), path.string(), e.line());
  }
}
}  // namespace

ExpertStream load_expert_stream(
  Expert expert, const std::filesystem::path & predictions,
  const std::optional<std::filesystem::path> & confidences)
{
  const std::string text = read_text_file(predictions);
  std::optional<std::filesystem::path> conf_path = confidences;
  if (!conf_path && std::filesystem::exists(sidecar_path(predictions))) {
    conf_path = sidecar_path(predictions);
  }
  std::optional<std::string> conf_text;
  if (conf_path) {
    conf_text = read_text_file(*conf_path);
    with_file_context(*conf_path, [&] { return parse_confidences(*conf_text); });
  }
  return with_file_context(predictions, [&] {
    return ExpertStream{
      expert, parse_predictions(text, conf_text ? std::optional<std::string_view>(*conf_text) : std::nullopt)};
  });
}

namespace
{
struct KeyValue
{
  std::string key;
  std::string value;
  std::size_t line;
};

std::vector<KeyValue> parse_key_values(std::string_view text)
{
  std::vector<KeyValue> out;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    std::string_view line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) {
      return;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::MalformedLine, "expected 'key = value'", {}, line_no);
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw Error(ErrorCode::MalformedLine, "empty key", {}, line_no);
    }
    out.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  });
  return out;
}

double real_value(const KeyValue & kv)
{
  const auto v = to_real(kv.value);
  if (!v) {
    throw Error(ErrorCode::TypeError, "expected a real number, got '" + kv.value + "'", kv.key, kv.line);
  }
  return *v;
}

std::uint64_t count_value(const KeyValue & kv)
{
  std::uint64_t v = 0;
  const char * last = kv.value.data() + kv.value.size();
  const auto [ptr, ec] = std::from_chars(kv.value.data(), last, v);
  if (ec != std::errc() || ptr != last || kv.value.empty()) {
    throw Error(ErrorCode::TypeError, "expected a non-negative integer, got '" + kv.value + "'", kv.key, kv.line);
  }
  return v;
}

std::vector<std::string_view> split_list(std::string_view s)
{
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto c = s.find(',', pos);
    parts.push_back(trim(s.substr(pos, c == std::string_view::npos ? s.npos : c - pos)));
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  return parts;
}

// "start:step:stop" or "a, b, c".
std::vector<double> grid_value(const KeyValue & kv)
{
  const std::string_view v = kv.value;
  const auto bad = [&](const std::string & why) {
    return Error(ErrorCode::TypeError, why, kv.key, kv.line);
  };
  if (std::count(v.begin(), v.end(), ':') == 2) {
    const auto c1 = v.find(':');
    const auto c2 = v.find(':', c1 + 1);
    const auto start = to_real(trim(v.substr(0, c1)));
    const auto step = to_real(trim(v.substr(c1 + 1, c2 - c1 - 1)));
    const auto stop = to_real(trim(v.substr(c2 + 1)));
    if (!start || !step || !stop) {
      throw bad("range must be start:step:stop");
    }
    try {
      return make_grid(*start, *step, *stop);
    } catch (const Error & e) {
      throw bad(e.message());
    }
  }
  std::vector<double> out;
  for (const auto part : split_list(v)) {
    const auto x = to_real(part);
    if (!x) {
      throw bad("not a number: '" + std::string(part) + "'");
    }
    out.push_back(*x);
  }
  return out;
}

std::vector<FrameInterval> interval_value(const KeyValue & kv)
{
  std::vector<FrameInterval> out;
  if (kv.value.empty()) {
    return out;
  }
  for (const auto part : split_list(kv.value)) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::TypeError, "interval must be start:end", kv.key, kv.line);
    }
    KeyValue a{kv.key, std::string(trim(part.substr(0, colon))), kv.line};
    KeyValue b{kv.key, std::string(trim(part.substr(colon + 1))), kv.line};
    out.push_back({count_value(a), count_value(b)});
  }
  return out;
}

template <typename T>
T enum_value(const KeyValue & kv, T (*parse)(std::string_view))
{
  try {
    return parse(kv.value);
  } catch (const Error & e) {
    throw Error(ErrorCode::TypeError, e.message() + ": '" + kv.value + "'", kv.key, kv.line);
  }
}

using Setter = std::function<void(const KeyValue &)>;

void add_metric_keys(std::map<std::string, Setter> & keys, MetricConfig & cfg)
{
  keys["success_thresholds"] = [&](const KeyValue & kv) { cfg.success_thresholds = grid_value(kv); };
  keys["precision_thresholds"] = [&](const KeyValue & kv) { cfg.precision_thresholds = grid_value(kv); };
  keys["pooling"] = [&](const KeyValue & kv) { cfg.pooling = enum_value(kv, parse_pooling); };
  keys["pr_report_threshold"] = [&](const KeyValue & kv) { cfg.pr_report_threshold = real_value(kv); };
}

void add_profile_keys(std::map<std::string, Setter> & keys, const std::string & prefix, DegradationProfile & p)
{
  keys[prefix + ".degraded_fraction"] = [&](const KeyValue & kv) { p.degraded_fraction = real_value(kv); };
  keys[prefix + ".intervals"] = [&](const KeyValue & kv) { p.intervals = interval_value(kv); };
  keys[prefix + ".informative_noise"] = [&](const KeyValue & kv) { p.informative_noise = real_value(kv); };
  keys[prefix + ".behavior"] = [&](const KeyValue & kv) { p.behavior = enum_value(kv, parse_degraded_behavior); };
  keys[prefix + ".confidence_noise"] = [&](const KeyValue & kv) { p.confidence_noise = real_value(kv); };
}

void apply_keys(std::string_view text, const std::map<std::string, Setter> & keys)
{
  std::set<std::string> seen;
  for (const auto & kv : parse_key_values(text)) {
    const auto it = keys.find(kv.key);
    if (it == keys.end()) {
      throw Error(ErrorCode::UnknownKey, "not a recognised config key", kv.key, kv.line);
    }
    if (!seen.insert(kv.key).second) {
      throw Error(ErrorCode::InvalidConfig, "key given twice", kv.key, kv.line);
    }
    it->second(kv);
  }
}
}  // namespace

MetricConfig parse_metric_config(std::string_view text)
{
  MetricConfig cfg;
  std::map<std::string, Setter> keys;
  add_metric_keys(keys, cfg);
  apply_keys(text, keys);
  cfg.validate();
  return cfg;
}

MetricConfig load_metric_config(const std::filesystem::path & path)
{
  const std::string text = read_text_file(path);
  return with_file_context(path, [&] { return parse_metric_config(text); });
}

ScenarioConfig parse_scenario_config(std::string_view text)
{
  ScenarioConfig cfg;
  std::map<std::string, Setter> keys;
  add_metric_keys(keys, cfg.metric);
  keys["name"] = [&](const KeyValue & kv) { cfg.name = kv.value; };
  keys["sequences"] = [&](const KeyValue & kv) { cfg.sequences = count_value(kv); };
  keys["frames"] = [&](const KeyValue & kv) { cfg.frames = count_value(kv); };
  keys["width"] = [&](const KeyValue & kv) { cfg.extent.width = real_value(kv); };
  keys["height"] = [&](const KeyValue & kv) { cfg.extent.height = real_value(kv); };
  keys["size_min"] = [&](const KeyValue & kv) { cfg.size_min = real_value(kv); };
  keys["size_max"] = [&](const KeyValue & kv) { cfg.size_max = real_value(kv); };
  keys["motion_sigma"] = [&](const KeyValue & kv) { cfg.motion_sigma = real_value(kv); };
  keys["seed"] = [&](const KeyValue & kv) { cfg.seed = count_value(kv); };
  keys["tie"] = [&](const KeyValue & kv) { cfg.tie = enum_value(kv, TiePolicy::parse); };
  keys["fused.alpha"] = [&](const KeyValue & kv) { cfg.fused.alpha = real_value(kv); };
  keys["fused.beta"] = [&](const KeyValue & kv) { cfg.fused.beta = real_value(kv); };
  keys["fused.confidence_noise"] = [&](const KeyValue & kv) { cfg.fused.confidence_noise = real_value(kv); };
  add_profile_keys(keys, "rgb", cfg.rgb);
  add_profile_keys(keys, "tir", cfg.tir);
  apply_keys(text, keys);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path & path)
{
  const std::string text = read_text_file(path);
  return with_file_context(path, [&] { return parse_scenario_config(text); });
}

DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path & base_dir)
{
  std::string name;
  bool have_name = false;
  std::vector<ManifestEntry> entries;
  std::set<std::string> ids;
  for (const auto & kv : parse_key_values(text)) {
    if (kv.key == "benchmark") {
      if (have_name) {
        throw Error(ErrorCode::InvalidConfig, "key given twice", kv.key, kv.line);
      }
      name = kv.value;
      have_name = true;
      continue;
    }
    if (kv.key != "sequence") {
      throw Error(ErrorCode::UnknownKey, "manifest keys are benchmark and sequence", kv.key, kv.line);
    }
    const auto parts = split_list(kv.value);
    if (parts.size() < 2 || parts.size() > 3 || parts[0].empty() || parts[1].empty()) {
      throw Error(ErrorCode::MalformedLine, "expected 'sequence = id, path[, tag]'", {}, kv.line);
    }
    const std::string id(parts[0]);
    if (!ids.insert(id).second) {
      throw Error(ErrorCode::DuplicateSequenceId, "sequence id appears twice", id, kv.line);
    }
    const Subset subset = parts.size() == 3 ? parse_subset_tag(parts[2]) : Subset::Unspecified;
    std::filesystem::path gt_path(parts[1]);
    if (gt_path.is_relative()) {
      gt_path = base_dir / gt_path;
    }
    const std::string gt_text = read_text_file(gt_path);
    auto frames = with_file_context(gt_path, [&] { return parse_groundtruth(gt_text); });
    if (frames.empty()) {
      throw Error(ErrorCode::MalformedLine, "groundtruth file has no frames", gt_path.string());
    }
    entries.push_back({SequenceAnnotation(id, subset, std::move(frames)), gt_path});
  }
  return DatasetManifest(name, std::move(entries));
}

DatasetManifest load_manifest(const std::filesystem::path & path)
{
  const std::string text = read_text_file(path);
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return with_file_context(path, [&] { return parse_manifest(text, base); });
}

SequenceResults load_results(const std::filesystem::path & dir, const DatasetManifest & manifest)
{
  SequenceResults out;
  for (const auto & entry : manifest.entries()) {
    const std::string & id = entry.sequence.id();
    const auto pred_path = dir / (id + ".txt");
    if (!std::filesystem::exists(pred_path)) {
      throw Error(ErrorCode::MissingSequenceResult, "missing " + pred_path.string(), id);
    }
    ExpertStream s = load_expert_stream(Expert::Rgbt, pred_path);
    if (s.size() != entry.sequence.size()) {
      throw Error(
        ErrorCode::LengthMismatch,
        std::to_string(s.size()) + " predictions for " + std::to_string(entry.sequence.size()) + " frames", id);
    }
    out.emplace(id, std::move(s.predictions));
  }
  return out;
}

}  // namespace rgbtfuse
