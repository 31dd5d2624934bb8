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

#include "moralscope/corpus.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstdio>
#include <regex>

#include "moralscope/error.h"
#include "moralscope/util/csv.h"
#include "moralscope/util/strings.h"
#include "moralscope/util/unicode.h"

namespace moralscope::corpus {
namespace {

constexpr std::string_view kModule = "corpus";

using std::chrono::days;
using std::chrono::hours;
using std::chrono::minutes;
using std::chrono::seconds;

std::string AsciiUpper(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::optional<int> Digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    value = value * 10 + (s[i] - '0');
  }
  return value;
}

std::optional<Timestamp> ParseDate(std::string_view s) {
  const auto y = Digits(s, 0, 4);
  const auto m = Digits(s, 5, 2);
  const auto d = Digits(s, 8, 2);
  if (!y || !m || !d || s[4] != '-' || s[7] != '-') return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year(*y),
                                        std::chrono::month(*m),
                                        std::chrono::day(*d)};
  if (!ymd.ok()) return std::nullopt;
  return Timestamp(std::chrono::sys_days(ymd).time_since_epoch());
}

// Records that fail to parse carry a reason for the skip report.
struct RawRecord {
  std::optional<Document> doc;
  std::string reason;
};

RawRecord MakeDocument(std::string id, std::string text,
                       std::string_view created_at, std::string lang,
                       std::string country) {
  RawRecord out;
  if (id.empty()) {
    out.reason = "missing_id";
    return out;
  }
  const auto ts = ParseRfc3339(created_at);
  if (!ts) {
    out.reason = "bad_timestamp";
    return out;
  }
  if (!IsValidUtf8(text) || !IsValidUtf8(id)) {
    out.reason = "invalid_utf8";
    return out;
  }
  Document doc;
  doc.id = std::move(id);
  doc.text = std::move(text);
  doc.created_at = *ts;
  doc.lang = AsciiLower(Trim(lang));
  doc.country = AsciiUpper(Trim(country));
  out.doc = std::move(doc);
  return out;
}

RawRecord ParseJsonRecord(std::string_view line) {
  RawRecord out;
  const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    out.reason = "invalid_json";
    return out;
  }
  const auto optional_string = [&](const char *key) -> std::optional<std::string> {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::string();
    if (it->is_string()) return it->get<std::string>();
    return std::nullopt;
  };
  std::string id;
  if (const auto it = j.find("id"); it != j.end()) {
    if (it->is_string()) {
      id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      id = it->dump();
    }
  }
  const auto text = j.find("text");
  const auto created = j.find("created_at");
  const auto lang = optional_string("lang");
  const auto country = optional_string("country");
  if (text == j.end() || !text->is_string() || created == j.end() ||
      !created->is_string() || !lang || !country) {
    out.reason = "missing_field";
    return out;
  }
  return MakeDocument(std::move(id), text->get<std::string>(),
                      created->get<std::string>(), *lang, *country);
}

void Accept(RawRecord record, IngestResult &result,
            std::set<std::string> &seen) {
  ++result.report.records;
  if (record.doc && !seen.insert(record.doc->id).second) {
    record.doc.reset();
    record.reason = "duplicate_id";
  }
  if (!record.doc) {
    ++result.report.skipped;
    ++result.report.reasons[record.reason];
    return;
  }
  result.documents.push_back(std::move(*record.doc));
}

void IngestJsonl(std::string_view text, IngestResult &result) {
  std::set<std::string> seen;
  for (std::string_view line : SplitLines(text)) {
    if (Trim(line).empty()) continue;
    Accept(ParseJsonRecord(line), result, seen);
  }
}

void IngestCsv(std::string_view text, IngestResult &result) {
  CsvReader reader(text);
  const auto header = reader.Next();
  if (!header) return;
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    columns.emplace(AsciiLower(Trim(header->fields[i])), i);
  }
  const auto col = [&](const char *name) -> std::optional<std::size_t> {
    const auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  };
  const auto id_col = col("id");
  const auto text_col = col("text");
  const auto created_col = col("created_at");
  const auto lang_col = col("lang");
  const auto country_col = col("country");

  std::set<std::string> seen;
  while (auto record = reader.Next()) {
    RawRecord raw;
    const auto &f = record->fields;
    const auto get = [&](std::optional<std::size_t> c) {
      return c && *c < f.size() ? f[*c] : std::string();
    };
    if (record->malformed) {
      raw.reason = "malformed_csv";
    } else if (!id_col || !text_col || !created_col ||
               f.size() != header->fields.size()) {
      raw.reason = "missing_field";
    } else {
      raw = MakeDocument(get(id_col), get(text_col), get(created_col),
                         get(lang_col), get(country_col));
    }
    Accept(std::move(raw), result, seen);
  }
}

bool LangMatches(const std::string &lang, const std::set<std::string> &langs) {
  if (lang.empty()) return false;
  if (langs.contains(lang)) return true;
  const std::size_t dash = lang.find('-');
  return dash != std::string::npos && langs.contains(lang.substr(0, dash));
}

std::string NormalizeKeyword(std::string_view keyword) {
  std::string k = NfcLower(Trim(keyword));
  while (!k.empty() && k.front() == '#') k.erase(0, 1);
  return k;
}

bool IsWordChar(UChar32 c) {
  return u_isalnum(c) || (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

bool IsApostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }

}  // namespace

Format ParseFormat(std::string_view name) {
  const std::string lower = AsciiLower(Trim(name));
  if (lower == "jsonl") return Format::kJsonl;
  if (lower == "csv") return Format::kCsv;
  throw Error(kModule, ErrorCode::kUnknownFormat,
              "unknown corpus format '" + std::string(name) + "'");
}

Format FormatFromPath(const std::filesystem::path &path) {
  const std::string ext = AsciiLower(path.extension().string());
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") {
    return Format::kJsonl;
  }
  if (ext == ".csv") return Format::kCsv;
  throw Error(kModule, ErrorCode::kUnknownFormat,
              "cannot infer corpus format of " + path.string());
}

nlohmann::json SkipReport::ToJson() const {
  return {{"records", records}, {"skipped", skipped}, {"reasons", reasons}};
}

nlohmann::json DropCounts::ToJson() const {
  return {{"country", country},
          {"lang", lang},
          {"keyword", keyword},
          {"date", date},
          {"total", total()}};
}

IngestResult IngestText(std::string_view text, Format format) {
  IngestResult result;
  if (format == Format::kJsonl) {
    IngestJsonl(text, result);
  } else {
    IngestCsv(text, result);
  }
  if (result.report.records > 0 && result.documents.empty()) {
    throw Error(kModule, ErrorCode::kAllRecordsMalformed,
                "none of " + std::to_string(result.report.records) +
                    " records could be parsed");
  }
  return result;
}

IngestResult Ingest(const std::filesystem::path &path, Format format) {
  return IngestText(ReadFileOrThrow(path, kModule), format);
}

std::optional<Timestamp> ParseRfc3339(std::string_view s) {
  s = Trim(s);
  if (s.size() < 20) return std::nullopt;
  auto date = ParseDate(s);
  if (!date || (s[10] != 'T' && s[10] != 't' && s[10] != ' ')) {
    return std::nullopt;
  }
  const auto hh = Digits(s, 11, 2);
  const auto mm = Digits(s, 14, 2);
  const auto ss = Digits(s, 17, 2);
  if (!hh || !mm || !ss || s[13] != ':' || s[16] != ':' || *hh > 23 ||
      *mm > 59 || *ss > 60) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return std::nullopt;
  }
  Timestamp t = *date + hours(*hh) + minutes(*mm) + seconds(*ss);
  const std::string_view zone = s.substr(pos);
  if (zone == "Z" || zone == "z") return t;
  if (zone.size() != 6 || (zone[0] != '+' && zone[0] != '-') || zone[3] != ':') {
    return std::nullopt;
  }
  const auto oh = Digits(zone, 1, 2);
  const auto om = Digits(zone, 4, 2);
  if (!oh || !om || *oh > 23 || *om > 59) return std::nullopt;
  const auto offset = hours(*oh) + minutes(*om);
  return zone[0] == '+' ? t - offset : t + offset;
}

std::string FormatRfc3339(Timestamp t) {
  const auto day = std::chrono::floor<days>(t);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::optional<Timestamp> ParseDateBound(std::string_view s, bool end_bound) {
  s = Trim(s);
  if (s.size() == 10) {
    auto date = ParseDate(s);
    if (date && end_bound) *date += days(1) - seconds(1);
    return date;
  }
  return ParseRfc3339(s);
}

void FilterSpec::Validate() const {
  if (start && end && *start > *end) {
    throw Error(kModule, ErrorCode::kInvalidFilter,
                "date window start is after its end");
  }
}

bool FilterSpec::empty() const {
  return countries.empty() && langs.empty() && keywords.empty() && !start &&
         !end;
}

FilterResult ApplyFilters(std::vector<Document> docs, const FilterSpec &spec) {
  spec.Validate();
  std::set<std::string> countries;
  for (const auto &c : spec.countries) countries.insert(AsciiUpper(Trim(c)));
  std::set<std::string> langs;
  for (const auto &l : spec.langs) langs.insert(AsciiLower(Trim(l)));
  std::set<std::string> keywords;
  for (const auto &k : spec.keywords) {
    if (auto n = NormalizeKeyword(k); !n.empty()) keywords.insert(std::move(n));
  }

  FilterResult result;
  for (Document &doc : docs) {
    if (!countries.empty() && !countries.contains(doc.country)) {
      ++result.drops.country;
      continue;
    }
    if (!langs.empty() && !LangMatches(doc.lang, langs)) {
      ++result.drops.lang;
      continue;
    }
    if (!keywords.empty()) {
      const auto tokens = Normalize(doc.text);
      const bool hit = std::any_of(
          tokens.begin(), tokens.end(),
          [&](const std::string &t) { return keywords.contains(t); });
      if (!hit) {
        ++result.drops.keyword;
        continue;
      }
    }
    if ((spec.start && doc.created_at < *spec.start) ||
        (spec.end && doc.created_at > *spec.end)) {
      ++result.drops.date;
      continue;
    }
    result.kept.push_back(std::move(doc));
  }
  return result;
}

StopwordSet ParseStopwords(std::string_view text) {
  StopwordSet words;
  for (std::string_view line : SplitLines(text)) {
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    for (std::string &token : Normalize(line)) words.insert(std::move(token));
  }
  return words;
}

std::vector<std::string> Normalize(std::string_view text, bool drop_stopwords,
                                   const StopwordSet &stopwords) {
  static const std::regex kUrl(R"((https?://|www\.|t\.co/)\S*)");
  static const std::regex kMention(R"(@[a-z0-9_]+)");

  std::string s = NfcLower(text);
  s = std::regex_replace(s, kUrl, " ");
  s = std::regex_replace(s, kMention, " ");

  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (current.empty()) return;
    if (!(drop_stopwords && stopwords.contains(current))) {
      tokens.push_back(std::move(current));
    }
    current.clear();
  };

  const auto *bytes = reinterpret_cast<const uint8_t *>(s.data());
  const int32_t length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c >= 0 && IsWordChar(c)) {
      current.append(s, start, i - start);
      continue;
    }
    if (c >= 0 && IsApostrophe(c) && !current.empty() && i < length) {
      int32_t j = i;
      UChar32 next;
      U8_NEXT(bytes, j, length, next);
      if (next >= 0 && IsWordChar(next)) {
        current.push_back('\'');
        continue;
      }
    }
    flush();
  }
  flush();
  return tokens;
}

nlohmann::json DocumentToJson(const Document &doc) {
  return {{"id", doc.id},
          {"text", doc.text},
          {"created_at", FormatRfc3339(doc.created_at)},
          {"lang", doc.lang},
          {"country", doc.country},
          {"tokens", doc.tokens}};
}

Document DocumentFromJson(const nlohmann::json &j) {
  Document doc;
  doc.id = j.at("id").get<std::string>();
  doc.text = j.at("text").get<std::string>();
  const auto ts = ParseRfc3339(j.at("created_at").get<std::string>());
  if (!ts) {
    throw Error(kModule, ErrorCode::kIo, "bad created_at for " + doc.id);
  }
  doc.created_at = *ts;
  doc.lang = j.value("lang", "");
  doc.country = j.value("country", "");
  if (const auto it = j.find("tokens"); it != j.end()) {
    doc.tokens = it->get<std::vector<std::string>>();
  }
  return doc;
}

}  // namespace moralscope::corpus
