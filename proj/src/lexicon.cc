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

#include "moralscope/lexicon.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <tuple>

#include "moralscope/error.h"
#include "moralscope/util/csv.h"
#include "moralscope/util/strings.h"
#include "moralscope/util/unicode.h"

namespace moralscope::lexicon {
namespace {

constexpr std::string_view kModule = "lexicon";

[[noreturn]] void Fail(ErrorCode code, const std::string &message) {
  throw Error(kModule, code, message);
}

std::string Where(std::size_t line) { return "line " + std::to_string(line); }

// ---------------------------------------------------------------------------
// Generic .dic reader shared by the MFD and category dictionary parsers.

struct DicWordLine {
  std::string word;
  std::vector<std::int64_t> ids;
  std::size_t line = 0;
};

struct DicFile {
  std::map<std::int64_t, std::string> categories;
  std::vector<DicWordLine> words;
};

DicFile ReadDic(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const std::vector<std::string_view> lines = SplitLines(text);
  std::size_t i = 0;
  while (i < lines.size() && Trim(lines[i]).empty()) ++i;
  if (i == lines.size() || Trim(lines[i]) != "%") {
    Fail(ErrorCode::kMalformedHeader, "expected opening '%' line");
  }
  ++i;

  DicFile dic;
  bool closed = false;
  for (; i < lines.size(); ++i) {
    const std::string_view line = Trim(lines[i]);
    if (line.empty()) continue;
    if (line == "%") {
      closed = true;
      ++i;
      break;
    }
    const auto fields = SplitWhitespace(line);
    const auto id = fields.size() >= 2 ? ParseInt(fields[0]) : std::nullopt;
    if (!id) {
      Fail(ErrorCode::kMalformedHeader,
           Where(i + 1) + ": expected '<id> <name>' in header");
    }
    std::string name;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      if (f > 1) name.push_back(' ');
      name += fields[f];
    }
    if (!dic.categories.emplace(*id, name).second) {
      Fail(ErrorCode::kMalformedHeader,
           Where(i + 1) + ": duplicate category id " + std::to_string(*id));
    }
  }
  if (!closed) Fail(ErrorCode::kMalformedHeader, "missing closing '%' line");

  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (Trim(line).empty()) continue;
    DicWordLine word_line;
    word_line.line = i + 1;
    std::string_view word;
    std::string_view rest;
    if (const std::size_t tab = line.find('\t'); tab != std::string_view::npos) {
      word = Trim(line.substr(0, tab));
      rest = line.substr(tab + 1);
    } else {
      const auto fields = SplitWhitespace(line);
      word = fields.front();
      rest = line.substr(word.data() + word.size() - line.data());
    }
    word_line.word = std::string(word);
    for (std::string_view field : SplitWhitespace(rest)) {
      const auto id = ParseInt(field);
      if (!id) {
        Fail(ErrorCode::kMalformedEntry,
             Where(i + 1) + ": bad category id '" + std::string(field) + "'");
      }
      if (!dic.categories.contains(*id)) {
        Fail(ErrorCode::kUnknownCategoryId,
             Where(i + 1) + ": undeclared category id " + std::to_string(*id));
      }
      word_line.ids.push_back(*id);
    }
    if (word_line.ids.empty()) {
      Fail(ErrorCode::kMalformedEntry,
           Where(i + 1) + ": word '" + word_line.word + "' lists no category");
    }
    dic.words.push_back(std::move(word_line));
  }
  return dic;
}

// Lowercases a raw word and splits off the wildcard. Returns nullopt for
// multi-word expressions, which are not supported.
std::optional<EntryKey> ParseSurface(std::string_view raw, std::size_t line) {
  std::string surface = NfcLower(Trim(raw));
  if (surface.find_first_of(" \t") != std::string::npos) return std::nullopt;
  MatchKind kind = MatchKind::kExact;
  if (!surface.empty() && surface.back() == '*') {
    surface.pop_back();
    kind = MatchKind::kPrefix;
  }
  if (surface.empty() || surface.find('*') != std::string::npos) {
    Fail(ErrorCode::kMalformedEntry,
         Where(line) + ": bad word '" + std::string(raw) + "'");
  }
  return EntryKey{std::move(surface), kind};
}

std::string CompactName(std::string_view name) {
  std::string out;
  for (char c : AsciiLower(name)) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out.push_back(c);
  }
  return out;
}

// MFD category names. Returns nullopt for names that are recognised but do
// not denote a dimension (MoralityGeneral); throws for anything else.
std::optional<Dimension> MfdCategory(std::string_view name) {
  static const std::map<std::string, Dimension, std::less<>> kTable = [] {
    std::map<std::string, Dimension, std::less<>> table;
    const auto add = [&](std::string_view key, Foundation f, Polarity p) {
      table.emplace(std::string(key), Dimension(f, p));
    };
    for (Polarity p : {Polarity::kVirtue, Polarity::kVice}) {
      const std::string suffix(PolarityName(p));
      add("harm" + suffix, Foundation::kCare, p);
      add("care" + suffix, Foundation::kCare, p);
      add("fairness" + suffix, Foundation::kFairness, p);
      add("ingroup" + suffix, Foundation::kLoyalty, p);
      add("loyalty" + suffix, Foundation::kLoyalty, p);
      add("authority" + suffix, Foundation::kAuthority, p);
      add("purity" + suffix, Foundation::kPurity, p);
      add("sanctity" + suffix, Foundation::kPurity, p);
    }
    return table;
  }();
  const std::string compact = CompactName(name);
  if (compact == "moralitygeneral") return std::nullopt;
  const auto it = kTable.find(compact);
  if (it == kTable.end()) {
    Fail(ErrorCode::kMalformedHeader,
         "category '" + std::string(name) + "' does not name a dimension");
  }
  return it->second;
}

void Insert(EntrySet &set, LexiconEntry entry) {
  EntryKey key = entry.key();
  set.emplace(std::move(key), std::move(entry));
}

Source Combine(Source a, Source b) { return a == b ? a : Source::kBoth; }

std::optional<Source> ParseSource(std::string_view s) {
  if (s == "mfd") return Source::kMfd;
  if (s == "moralstrength") return Source::kMoralStrength;
  if (s == "both") return Source::kBoth;
  return std::nullopt;
}

std::optional<MatchKind> ParseMatchKind(std::string_view s) {
  if (s == "exact") return MatchKind::kExact;
  if (s == "prefix") return MatchKind::kPrefix;
  return std::nullopt;
}

double CheckedValence(std::string_view field, std::size_t line) {
  const auto v = ParseDouble(field);
  if (!v || *v < 1.0 || *v > 9.0) {
    Fail(ErrorCode::kBadValence,
         Where(line) + ": valence '" + std::string(field) +
             "' is not a number in [1, 9]");
  }
  return *v;
}

std::map<std::string, std::size_t> HeaderIndex(const CsvRecord &header) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    index.emplace(AsciiLower(Trim(header.fields[i])), i);
  }
  return index;
}

std::shared_ptr<const TokenMatcher> BuildMatcher(
    const std::vector<const EntrySet *> &groups) {
  std::vector<std::vector<TokenMatcher::Pattern>> patterns;
  patterns.reserve(groups.size());
  for (const EntrySet *set : groups) {
    auto &group = patterns.emplace_back();
    for (const auto &[key, entry] : *set) {
      group.push_back({entry.surface, entry.kind, ValenceWeight(entry.valence)});
    }
  }
  return std::make_shared<const TokenMatcher>(patterns);
}

}  // namespace

std::string_view MatchKindName(MatchKind kind) {
  return kind == MatchKind::kExact ? "exact" : "prefix";
}

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kMfd: return "mfd";
    case Source::kMoralStrength: return "moralstrength";
    case Source::kBoth: return "both";
  }
  return "";
}

std::size_t PartialLexicon::size() const {
  std::size_t n = 0;
  for (const auto &set : entries) n += set.size();
  return n;
}

double ValenceWeight(const std::optional<double> &valence) {
  return valence ? std::abs(*valence - 5.0) / 4.0 : 1.0;
}

// ---------------------------------------------------------------------------
// TokenMatcher

TokenMatcher::TokenMatcher(const std::vector<std::vector<Pattern>> &groups)
    : group_count_(groups.size()) {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const Pattern &p : groups[g]) {
      HitTable &table = p.kind == MatchKind::kExact ? exact_ : prefix_;
      table[p.surface].push_back({g, p.weight});
      if (p.kind == MatchKind::kPrefix) {
        max_prefix_len_ = std::max(max_prefix_len_, p.surface.size());
      }
    }
  }
}

void TokenMatcher::Match(std::span<const std::string> tokens,
                         std::vector<std::size_t> &counts,
                         std::vector<double> *weights) const {
  counts.assign(group_count_, 0);
  if (weights != nullptr) weights->assign(group_count_, 0.0);
  std::vector<double> best(group_count_, -1.0);
  std::vector<std::size_t> touched;
  const auto visit = [&](const std::vector<Hit> &hits) {
    for (const Hit &hit : hits) {
      if (best[hit.group] < 0) touched.push_back(hit.group);
      best[hit.group] = std::max(best[hit.group], hit.weight);
    }
  };
  for (const std::string &token : tokens) {
    touched.clear();
    if (auto it = exact_.find(token); it != exact_.end()) visit(it->second);
    const std::size_t limit = std::min(max_prefix_len_, token.size());
    std::string prefix;
    prefix.reserve(limit);
    for (std::size_t len = 1; len <= limit; ++len) {
      prefix.push_back(token[len - 1]);
      if (auto it = prefix_.find(prefix); it != prefix_.end()) {
        visit(it->second);
      }
    }
    for (std::size_t g : touched) {
      ++counts[g];
      if (weights != nullptr) (*weights)[g] += best[g];
      best[g] = -1.0;
    }
  }
}

// ---------------------------------------------------------------------------
// MergedLexicon / CategoryDictionary

MergedLexicon::MergedLexicon() : MergedLexicon(PerDimension<EntrySet>{}) {}

MergedLexicon::MergedLexicon(PerDimension<EntrySet> entries)
    : entries_(std::move(entries)) {
  std::vector<const EntrySet *> groups;
  for (const auto &set : entries_) groups.push_back(&set);
  matcher_ = BuildMatcher(groups);
}

std::size_t MergedLexicon::size() const {
  std::size_t n = 0;
  for (const auto &set : entries_) n += set.size();
  return n;
}

const std::array<std::string, kNumCategories> &SelectedCategories() {
  static const std::array<std::string, kNumCategories> kSelected = {
      "positive emotion", "negative emotion", "anger", "anxiety", "sadness"};
  return kSelected;
}

const std::array<std::string, kNumCategories> &CategoryDisplayNames() {
  static const std::array<std::string, kNumCategories> kNames = {
      "Pos. emotion", "Neg. emotion", "Anger", "Anxiety", "Sadness"};
  return kNames;
}

std::string CanonicalCategoryName(std::string_view name) {
  const std::string compact = CompactName(name);
  if (compact == "posemo" || compact == "positiveemotion") {
    return "positive emotion";
  }
  if (compact == "negemo" || compact == "negativeemotion") {
    return "negative emotion";
  }
  if (compact == "anx" || compact == "anxiety") return "anxiety";
  if (compact == "anger") return "anger";
  if (compact == "sad" || compact == "sadness") return "sadness";
  return AsciiLower(Trim(name));
}

CategoryDictionary::CategoryDictionary()
    : CategoryDictionary(Categories{}) {}

CategoryDictionary::CategoryDictionary(Categories categories)
    : categories_(std::move(categories)) {
  std::vector<const EntrySet *> groups;
  for (const auto &[name, set] : categories_) {
    names_.push_back(name);
    groups.push_back(&set);
  }
  matcher_ = BuildMatcher(groups);
}

std::optional<std::size_t> CategoryDictionary::GroupOf(
    std::string_view category) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), category);
  if (it == names_.end() || *it != category) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

// ---------------------------------------------------------------------------
// Parsers

PartialLexicon ParseMfd(std::string_view dic_text) {
  const DicFile dic = ReadDic(dic_text);
  if (dic.words.empty()) Fail(ErrorCode::kEmptyLexicon, "no word lines");

  std::map<std::int64_t, std::optional<Dimension>> dims;
  for (const auto &[id, name] : dic.categories) dims[id] = MfdCategory(name);

  PartialLexicon lexicon;
  for (const DicWordLine &line : dic.words) {
    const auto key = ParseSurface(line.word, line.line);
    if (!key) continue;
    for (std::int64_t id : line.ids) {
      const auto &dim = dims.at(id);
      if (!dim) continue;
      Insert(lexicon.entries[dim->index()],
             {key->surface, key->kind, std::nullopt, Source::kMfd});
    }
  }
  return lexicon;
}

MoralStrengthParse ParseMoralStrength(std::string_view csv_text) {
  CsvReader reader(csv_text);
  const auto header = reader.Next();
  if (!header) Fail(ErrorCode::kMalformedHeader, "missing header row");
  const auto columns = HeaderIndex(*header);
  const auto column = [&](std::initializer_list<std::string_view> names) {
    for (std::string_view name : names) {
      if (auto it = columns.find(std::string(name)); it != columns.end()) {
        return it->second;
      }
    }
    Fail(ErrorCode::kMalformedHeader,
         "header lacks column '" + std::string(*names.begin()) + "'");
  };
  const std::size_t lemma_col = column({"lemma", "word"});
  const std::size_t foundation_col = column({"foundation"});
  const std::size_t valence_col = column({"valence"});
  const std::size_t width =
      std::max({lemma_col, foundation_col, valence_col}) + 1;

  MoralStrengthParse result;
  while (auto record = reader.Next()) {
    if (record->malformed || record->fields.size() < width) {
      Fail(ErrorCode::kMalformedEntry, Where(record->line) + ": bad row");
    }
    const std::string &raw_foundation = record->fields[foundation_col];
    const auto foundation = ParseFoundation(raw_foundation);
    if (!foundation) {
      Fail(ErrorCode::kUnknownFoundation,
           Where(record->line) + ": unknown foundation '" + raw_foundation +
               "'");
    }
    const double valence =
        CheckedValence(record->fields[valence_col], record->line);
    const auto key = ParseSurface(record->fields[lemma_col], record->line);
    if (!key || key->kind != MatchKind::kExact) {
      Fail(ErrorCode::kMalformedEntry,
           Where(record->line) + ": lemma must be a single plain word");
    }
    if (valence == 5.0) {
      ++result.dropped_neutral;
      continue;
    }
    const Polarity polarity =
        valence > 5.0 ? Polarity::kVirtue : Polarity::kVice;
    Insert(result.lexicon.entries[Dimension(*foundation, polarity).index()],
           {key->surface, MatchKind::kExact, valence, Source::kMoralStrength});
  }
  return result;
}

MergedLexicon Merge(const PartialLexicon &a, const PartialLexicon &b) {
  PerDimension<EntrySet> merged;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    merged[d] = a.entries[d];
    for (const auto &[key, entry] : b.entries[d]) {
      auto [it, inserted] = merged[d].emplace(key, entry);
      if (inserted) continue;
      LexiconEntry &existing = it->second;
      existing.source = Combine(existing.source, entry.source);
      if (!existing.valence) existing.valence = entry.valence;
    }
  }
  return MergedLexicon(std::move(merged));
}

CategoryDictionary ParseCategoryDictionary(std::string_view dic_text) {
  const DicFile dic = ReadDic(dic_text);
  if (dic.words.empty()) Fail(ErrorCode::kEmptyLexicon, "no word lines");

  std::map<std::int64_t, std::string> names;
  CategoryDictionary::Categories categories;
  for (const auto &[id, name] : dic.categories) {
    names[id] = CanonicalCategoryName(name);
    categories[names[id]];
  }
  for (const std::string &selected : SelectedCategories()) {
    if (!categories.contains(selected)) {
      Fail(ErrorCode::kMissingCategory,
           "dictionary lacks category '" + selected + "'");
    }
  }
  for (const DicWordLine &line : dic.words) {
    const auto key = ParseSurface(line.word, line.line);
    if (!key) continue;
    for (std::int64_t id : line.ids) {
      Insert(categories[names.at(id)],
             {key->surface, key->kind, std::nullopt, Source::kMfd});
    }
  }
  return CategoryDictionary(std::move(categories));
}

// ---------------------------------------------------------------------------
// Serializers

std::string WriteMfd(const PartialLexicon &lexicon) {
  std::string out = "%\n";
  for (Dimension d : AllDimensions()) {
    out += std::to_string(d.index() + 1) + "\t" + std::string(d.Key()) + "\n";
  }
  out += "%\n";
  std::map<EntryKey, std::vector<std::size_t>> ids;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    for (const auto &[key, entry] : lexicon.entries[d]) {
      ids[key].push_back(d + 1);
    }
  }
  for (const auto &[key, list] : ids) {
    out += key.surface;
    if (key.kind == MatchKind::kPrefix) out.push_back('*');
    for (std::size_t i = 0; i < list.size(); ++i) {
      out += (i == 0 ? "\t" : " ") + std::to_string(list[i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string WriteMoralStrength(const PartialLexicon &lexicon) {
  std::string out = "lemma,foundation,valence\n";
  for (Dimension d : AllDimensions()) {
    for (const auto &[key, entry] : lexicon.entries[d.index()]) {
      if (!entry.valence || entry.kind != MatchKind::kExact) continue;
      out += CsvJoin({entry.surface, std::string(FoundationName(d.foundation())),
                      FormatDouble(*entry.valence)});
      out.push_back('\n');
    }
  }
  return out;
}

std::string WriteMergedCsv(const MergedLexicon &lexicon) {
  using Row = std::array<std::string, 6>;
  std::vector<Row> rows;
  for (Dimension d : AllDimensions()) {
    for (const auto &[key, entry] : lexicon.entries(d)) {
      rows.push_back({std::string(FoundationName(d.foundation())),
                      std::string(PolarityName(d.polarity())), entry.surface,
                      std::string(MatchKindName(entry.kind)),
                      entry.valence ? FormatDouble(*entry.valence) : "",
                      std::string(SourceName(entry.source))});
    }
  }
  std::sort(rows.begin(), rows.end());
  std::string out = "foundation,polarity,surface,match_kind,valence,provenance\n";
  for (const Row &row : rows) {
    out += CsvJoin({row.begin(), row.end()});
    out.push_back('\n');
  }
  return out;
}

MergedLexicon ReadMergedCsv(std::string_view csv_text) {
  CsvReader reader(csv_text);
  const auto header = reader.Next();
  static const std::vector<std::string> kHeader = {
      "foundation", "polarity", "surface", "match_kind", "valence",
      "provenance"};
  if (!header || header->fields != kHeader) {
    Fail(ErrorCode::kMalformedHeader, "unexpected merged lexicon header");
  }
  PerDimension<EntrySet> entries;
  while (auto record = reader.Next()) {
    const auto &f = record->fields;
    if (record->malformed || f.size() != kHeader.size()) {
      Fail(ErrorCode::kMalformedEntry, Where(record->line) + ": bad row");
    }
    const auto foundation = ParseFoundation(f[0]);
    if (!foundation) {
      Fail(ErrorCode::kUnknownFoundation,
           Where(record->line) + ": unknown foundation '" + f[0] + "'");
    }
    const auto polarity = ParsePolarity(f[1]);
    const auto kind = ParseMatchKind(f[3]);
    const auto source = ParseSource(f[5]);
    if (!polarity || !kind || !source || f[2].empty() ||
        f[2].find('*') != std::string::npos) {
      Fail(ErrorCode::kMalformedEntry, Where(record->line) + ": bad row");
    }
    std::optional<double> valence;
    if (!f[4].empty()) valence = CheckedValence(f[4], record->line);
    Insert(entries[Dimension(*foundation, *polarity).index()],
           {f[2], *kind, valence, *source});
  }
  return MergedLexicon(std::move(entries));
}

// ---------------------------------------------------------------------------
// Matching

PerDimension<std::size_t> MatchTokens(std::span<const std::string> tokens,
                                      const MergedLexicon &lexicon) {
  std::vector<std::size_t> counts;
  lexicon.matcher().Match(tokens, counts);
  PerDimension<std::size_t> out{};
  std::copy(counts.begin(), counts.end(), out.begin());
  return out;
}

std::map<std::string, std::size_t> MatchTokens(
    std::span<const std::string> tokens, const CategoryDictionary &dict) {
  std::vector<std::size_t> counts;
  dict.matcher().Match(tokens, counts);
  std::map<std::string, std::size_t> out;
  std::size_t g = 0;
  for (const auto &[name, set] : dict.categories()) out[name] = counts[g++];
  return out;
}

}  // namespace moralscope::lexicon
