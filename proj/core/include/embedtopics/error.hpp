// Copyright 2026 The embedtopics Authors.
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

#ifndef EMBEDTOPICS_ERROR_HPP
#define EMBEDTOPICS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace embedtopics {

enum class ErrorCode {
  kInvalidArgument,
  kIoError,
  kEmptyVocabulary,
  kMissingSplit,
  kFormatError,
  kDimensionMismatch,
  kZeroVector,
  kRankDeficient,
  kDegenerateInput,
  kZeroCentroid,
  kSingularCovariance,
  kMismatchedK,
  kProvenanceMismatch,
};

/// Stable name used in machine-readable error output ("FormatError", ...).
std::string_view error_code_name(ErrorCode code);

/// The single exception type thrown by the library. The code identifies the
/// failure class; the message carries human-readable detail such as file
/// offsets. `context` is prepended by callers that add configuration detail
/// while propagating.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

  Error with_context(std::string context) const {
    Error copy = *this;
    copy.context_ = context_.empty() ? std::move(context) : std::move(context) + ": " + context_;
    return copy;
  }

 private:
  ErrorCode code_;
  std::string context_;
};

}  // namespace embedtopics

#endif  // EMBEDTOPICS_ERROR_HPP
