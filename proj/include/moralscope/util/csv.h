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

// Minimal RFC 4180 reader/writer. Quoted fields may span lines.

#ifndef MORALSCOPE_UTIL_CSV_H_
#define MORALSCOPE_UTIL_CSV_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moralscope {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line the record starts on
  bool malformed = false;  // unterminated quote or junk after a closing quote
};

class CsvReader {
 public:
  explicit CsvReader(std::string_view text, char delimiter = ',');

  // Next record, skipping blank lines. nullopt at end of input.
  std::optional<CsvRecord> Next();

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  char delimiter_;
};

std::vector<CsvRecord> ReadCsv(std::string_view text, char delimiter = ',');

// Quotes a field only when it contains the delimiter, a quote or a newline.
std::string CsvEscape(std::string_view field);
std::string CsvJoin(const std::vector<std::string> &fields);

}  // namespace moralscope

#endif  // MORALSCOPE_UTIL_CSV_H_
