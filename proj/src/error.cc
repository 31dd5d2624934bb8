// Copyright 2026 The Moralscope Authors.
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

#include "moralscope/error.h"

namespace moralscope {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kUnknownCategoryId: return "UnknownCategoryId";
    case ErrorCode::kMalformedEntry: return "MalformedEntry";
    case ErrorCode::kEmptyLexicon: return "EmptyLexicon";
    case ErrorCode::kBadValence: return "BadValence";
    case ErrorCode::kUnknownFoundation: return "UnknownFoundation";
    case ErrorCode::kMissingCategory: return "MissingCategory";
    case ErrorCode::kFileUnreadable: return "FileUnreadable";
    case ErrorCode::kUnknownFormat: return "UnknownFormat";
    case ErrorCode::kAllRecordsMalformed: return "AllRecordsMalformed";
    case ErrorCode::kInvalidFilter: return "InvalidFilter";
    case ErrorCode::kNoTokenCoverage: return "NoTokenCoverage";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kMalformedEmbedding: return "MalformedEmbedding";
    case ErrorCode::kEmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::kServiceUnreachable: return "ServiceUnreachable";
    case ErrorCode::kProtocolViolation: return "ProtocolViolation";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kMissingDimension: return "MissingDimension";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kIncompleteMatrix: return "IncompleteMatrix";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kMissingUpstreamArtifact: return "MissingUpstreamArtifact";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(std::string_view module, ErrorCode code,
             const std::string &message)
    : std::runtime_error(message), module_(module), code_(code) {}

}  // namespace moralscope
