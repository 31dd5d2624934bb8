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

#ifndef MORALSCOPE_ERROR_H_
#define MORALSCOPE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace moralscope {

// Error kinds raised across the toolkit. Every kind belongs to the module
// that raises it; the CLI reports both in its error JSON.
enum class ErrorCode {
  // lexicon
  kMalformedHeader,
  kUnknownCategoryId,
  kMalformedEntry,
  kEmptyLexicon,
  kBadValence,
  kUnknownFoundation,
  kMissingCategory,
  // corpus
  kFileUnreadable,
  kUnknownFormat,
  kAllRecordsMalformed,
  kInvalidFilter,
  // zsc
  kNoTokenCoverage,
  kZeroVector,
  kMalformedEmbedding,
  kEmptyLabelSet,
  kServiceUnreachable,
  kProtocolViolation,
  kTimeout,
  kMissingDimension,
  // learn
  kTooFewSamples,
  kInvalidConfig,
  kDegenerateLabels,
  kDimensionMismatch,
  kLengthMismatch,
  // stats
  kZeroVariance,
  // report
  kIncompleteMatrix,
  // cli
  kConfigInvalid,
  kMissingUpstreamArtifact,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(std::string_view module, ErrorCode code, const std::string &message);

  const std::string &module() const { return module_; }
  ErrorCode code() const { return code_; }

 private:
  std::string module_;
  ErrorCode code_;
};

}  // namespace moralscope

#endif  // MORALSCOPE_ERROR_H_
