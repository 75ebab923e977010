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

#include "embedtopics/error.hpp"

namespace embedtopics {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kEmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::kMissingSplit: return "MissingSplit";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kZeroCentroid: return "ZeroCentroid";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kMismatchedK: return "MismatchedK";
    case ErrorCode::kProvenanceMismatch: return "ProvenanceMismatch";
  }
  return "Unknown";
}

}  // namespace embedtopics
