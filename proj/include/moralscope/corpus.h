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

// Post ingestion, corpus filters and text normalization.

#ifndef MORALSCOPE_CORPUS_H_
#define MORALSCOPE_CORPUS_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "json.hpp"

namespace moralscope::corpus {

using Timestamp = std::chrono::sys_seconds;

struct Document {
  std::string id;
  std::string text;
  Timestamp created_at{};
  std::string lang;     // BCP-47 tag or empty
  std::string country;  // ISO-3166 alpha-2 or empty
  std::vector<std::string> tokens;

  bool operator==(const Document &) const = default;
};

enum class Format { kJsonl, kCsv };

// "jsonl"/"csv"; throws kUnknownFormat.
Format ParseFormat(std::string_view name);
// By extension (.jsonl, .json, .ndjson, .csv); throws kUnknownFormat.
Format FormatFromPath(const std::filesystem::path &path);

struct SkipReport {
  std::size_t records = 0;  // non-blank records seen
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> reasons;

  nlohmann::json ToJson() const;
};

struct IngestResult {
  std::vector<Document> documents;
  SkipReport report;
};

// One document per well-formed record, in file order. Malformed records are
// skipped and counted. Throws kFileUnreadable, or kAllRecordsMalformed when
// records exist but none parsed.
IngestResult Ingest(const std::filesystem::path &path, Format format);
IngestResult IngestText(std::string_view text, Format format);

// RFC 3339 ("2020-03-12T08:15:00Z", offsets and fractions accepted;
// fractions are truncated).
std::optional<Timestamp> ParseRfc3339(std::string_view s);
std::string FormatRfc3339(Timestamp t);

// Accepts a full RFC 3339 timestamp or a bare date. A bare date used as an
// end bound means the last second of that day.
std::optional<Timestamp> ParseDateBound(std::string_view s, bool end_bound);

struct FilterSpec {
  std::set<std::string> countries;
  std::set<std::string> langs;
  std::set<std::string> keywords;  // words or hashtags; '#' optional
  std::optional<Timestamp> start;
  std::optional<Timestamp> end;

  // Throws kInvalidFilter when start > end.
  void Validate() const;
  bool empty() const;
};

struct DropCounts {
  std::size_t country = 0;
  std::size_t lang = 0;
  std::size_t keyword = 0;
  std::size_t date = 0;

  std::size_t total() const { return country + lang + keyword + date; }
  nlohmann::json ToJson() const;
};

struct FilterResult {
  std::vector<Document> kept;
  DropCounts drops;
};

// Order-preserving. Rules run in order country, lang, keyword, date; a
// dropped document is charged to the first rule it fails. Records lacking a
// country or lang tag fail an active country or lang rule. A lang rule
// accepts an exact tag or its primary subtag ("en-CA" passes {"en"}).
FilterResult ApplyFilters(std::vector<Document> docs, const FilterSpec &spec);

using StopwordSet = std::unordered_set<std::string>;

// One word per line; '#' starts a comment. Words are normalized.
StopwordSet ParseStopwords(std::string_view text);

// Lowercase + NFC, strip URLs and @-mentions, turn #tag into tag, split on
// anything that is not a letter, digit or combining mark. Apostrophes
// (' and U+2019, emitted as ') survive only between word characters.
std::vector<std::string> Normalize(std::string_view text,
                                   bool drop_stopwords = false,
                                   const StopwordSet &stopwords = {});

// JSONL (de)serialization of normalized documents, tokens included.
nlohmann::json DocumentToJson(const Document &doc);
Document DocumentFromJson(const nlohmann::json &j);

}  // namespace moralscope::corpus

#endif  // MORALSCOPE_CORPUS_H_
