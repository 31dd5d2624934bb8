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

#include "moralscope/util/csv.h"

namespace moralscope {

CsvReader::CsvReader(std::string_view text, char delimiter)
    : text_(text), delimiter_(delimiter) {
  // UTF-8 byte order mark.
  if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
}

std::optional<CsvRecord> CsvReader::Next() {
  // Skip blank lines.
  while (pos_ < text_.size()) {
    if (text_[pos_] == '\n') {
      ++pos_;
      ++line_;
    } else if (text_[pos_] == '\r' && pos_ + 1 < text_.size() &&
               text_[pos_ + 1] == '\n') {
      pos_ += 2;
      ++line_;
    } else {
      break;
    }
  }
  if (pos_ >= text_.size()) return std::nullopt;

  CsvRecord record;
  record.line = line_;
  std::string field;
  bool in_quotes = false;
  bool after_quote = false;
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (in_quotes) {
      if (c == '"') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
          field.push_back('"');
          pos_ += 2;
          continue;
        }
        in_quotes = false;
        after_quote = true;
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      ++pos_;
      continue;
    }
    if (c == delimiter_) {
      record.fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
      ++pos_;
      continue;
    }
    if (c == '\n' || (c == '\r' && pos_ + 1 < text_.size() &&
                      text_[pos_ + 1] == '\n')) {
      pos_ += (c == '\r') ? 2 : 1;
      ++line_;
      break;
    }
    if (c == '"' && field.empty() && !after_quote) {
      in_quotes = true;
    } else {
      if (after_quote) record.malformed = true;
      field.push_back(c);
    }
    ++pos_;
  }
  if (in_quotes) record.malformed = true;
  record.fields.push_back(std::move(field));
  return record;
}

std::vector<CsvRecord> ReadCsv(std::string_view text, char delimiter) {
  CsvReader reader(text, delimiter);
  std::vector<CsvRecord> records;
  while (auto record = reader.Next()) records.push_back(std::move(*record));
  return records;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string CsvJoin(const std::vector<std::string> &fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += CsvEscape(fields[i]);
  }
  return out;
}

}  // namespace moralscope
