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

#include "rgbtfuse/error.hpp"

#include <utility>

namespace rgbtfuse
{

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::NegativeExtent: return "NegativeExtent";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MissingSequenceResult: return "MissingSequenceResult";
    case ErrorCode::MissingConfidence: return "MissingConfidence";
    case ErrorCode::EmptyCurve: return "EmptyCurve";
    case ErrorCode::EmptyMap: return "EmptyMap";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::EmptyManifest: return "EmptyManifest";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NegativeLoss: return "NegativeLoss";
    case ErrorCode::NonPositiveScore: return "NonPositiveScore";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IntervalOutOfBounds: return "IntervalOutOfBounds";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::DuplicateSequenceId: return "DuplicateSequenceId";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace
{
std::string compose(
  ErrorCode code, const std::string & message, const std::string & subject,
  std::optional<std::size_t> line)
{
  std::string out(to_string(code));
  if (!subject.empty()) {
    out += " [" + subject + "]";
  }
  if (line) {
    out += " line " + std::to_string(*line);
  }
  if (!message.empty()) {
    out += ": " + message;
  }
  return out;
}
}  // namespace

Error::Error(
  ErrorCode code, std::string message, std::string subject, std::optional<std::size_t> line)
: std::runtime_error(compose(code, message, subject, line)),
  code_(code),
  message_(std::move(message)),
  subject_(std::move(subject)),
  line_(line)
{
}

}  // namespace rgbtfuse
