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

// Table rendering. Values print with three decimals, rounded half away from
// zero; correlations carry "***" (p < 0.001) or "*" (p < 0.05) unless
// plain; undefined cells print as an em dash in text formats and null in
// JSON. Output is byte-stable and locale-independent.

#ifndef MORALSCOPE_REPORT_H_
#define MORALSCOPE_REPORT_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "moralscope/learn.h"
#include "moralscope/stats.h"

namespace moralscope::report {

enum class Format { kMarkdown, kCsv, kJson };

Format ParseFormat(std::string_view name);      // "md"/"markdown", "csv", "json"
std::string_view FileExtension(Format format);  // "md", "csv", "json"

inline constexpr std::string_view kUndefined = "\xE2\x80\x94";  // U+2014

// Throws kIncompleteMatrix for a matrix that was never computed (n < 3) or
// holds out-of-range values.
std::string RenderCorrelation(const stats::CorrelationMatrix &matrix,
                              Format format, bool plain = false);

struct NamedEval {
  std::string corpus;
  learn::EvalReport report;
};

// One row per corpus, mean F1 per dimension.
std::string RenderF1(std::span<const NamedEval> reports, Format format);

}  // namespace moralscope::report

#endif  // MORALSCOPE_REPORT_H_
