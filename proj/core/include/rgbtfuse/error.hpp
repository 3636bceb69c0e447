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

#ifndef RGBTFUSE__ERROR_HPP_
#define RGBTFUSE__ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rgbtfuse
{

enum class ErrorCode {
  NegativeExtent,
  NonFinite,
  LengthMismatch,
  MissingSequenceResult,
  MissingConfidence,
  EmptyCurve,
  EmptyMap,
  EmptyTrace,
  EmptyManifest,
  EmptySubset,
  NegativeLoss,
  NonPositiveScore,
  InvalidConfig,
  IntervalOutOfBounds,
  MalformedLine,
  MissingFile,
  DuplicateSequenceId,
  UnknownKey,
  TypeError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `subject` names the offending entity
/// (sequence id, config key, path) and `line` is 1-based when the error came
/// from a text file.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string message, std::string subject = {},
    std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string & message() const noexcept { return message_; }
  const std::string & subject() const noexcept { return subject_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

private:
  ErrorCode code_;
  std::string message_;
  std::string subject_;
  std::optional<std::size_t> line_;
};

}  // namespace rgbtfuse

#endif  // RGBTFUSE__ERROR_HPP_
