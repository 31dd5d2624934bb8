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

#ifndef MORALSCOPE_UTIL_STRINGS_H_
#define MORALSCOPE_UTIL_STRINGS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moralscope {

std::string_view Trim(std::string_view s);
std::string AsciiLower(std::string_view s);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string_view> SplitWhitespace(std::string_view s);

// Splits text into lines, accepting \n and \r\n.
std::vector<std::string_view> SplitLines(std::string_view text);

// Locale-independent number parsing. The whole (trimmed) field must parse.
std::optional<double> ParseDouble(std::string_view s);
std::optional<std::int64_t> ParseInt(std::string_view s);

// Shortest decimal representation that round-trips to the same double.
std::string FormatDouble(double value);

// Fixed three-decimal rendering, rounding half away from zero on the
// shortest decimal representation (so 0.1505 renders as "0.151").
// Negative zero results render without the sign.
std::string FormatFixed3(double value);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string Fnv1aHex(std::string_view data);

std::string ReadFileOrThrow(const std::filesystem::path &path,
                            std::string_view module);
void WriteFileOrThrow(const std::filesystem::path &path,
                      std::string_view contents, std::string_view module);

}  // namespace moralscope

#endif  // MORALSCOPE_UTIL_STRINGS_H_
