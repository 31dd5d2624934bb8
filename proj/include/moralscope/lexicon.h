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

// Moral lexicons and LIWC-style category dictionaries.
//
// Two moral lexicon formats are read:
//
//   * MFD-style .dic: a '%'-delimited header mapping numeric category ids to
//     names (HarmVirtue, care.vice, ...), then "word<TAB>id [id ...]" lines.
//     A trailing '*' marks a prefix wildcard.
//   * MoralStrength-style CSV with columns lemma, foundation, valence. The
//     valence (1..9) decides the pole: above 5 is virtue, below 5 is vice,
//     exactly 5 is dropped and counted.
//
// Both parse into a PartialLexicon; Merge() unions them per dimension on the
// key (surface, match kind). The merged lexicon is immutable and owns a
// compiled TokenMatcher, so it can be shared across worker threads.

#ifndef MORALSCOPE_LEXICON_H_
#define MORALSCOPE_LEXICON_H_

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "moralscope/dimension.h"

namespace moralscope::lexicon {

enum class MatchKind { kExact, kPrefix };
enum class Source { kMfd, kMoralStrength, kBoth };

std::string_view MatchKindName(MatchKind kind);  // "exact" / "prefix"
std::string_view SourceName(Source source);      // "mfd" / "moralstrength" / "both"

struct EntryKey {
  std::string surface;
  MatchKind kind = MatchKind::kExact;

  auto operator<=>(const EntryKey &) const = default;
};

struct LexiconEntry {
  std::string surface;  // lowercase, no whitespace, no '*'
  MatchKind kind = MatchKind::kExact;
  std::optional<double> valence;  // MoralStrength valence in [1, 9]
  Source source = Source::kMfd;

  EntryKey key() const { return {surface, kind}; }
  bool operator==(const LexiconEntry &) const = default;
};

using EntrySet = std::map<EntryKey, LexiconEntry>;

// Output of a single-source parser.
struct PartialLexicon {
  PerDimension<EntrySet> entries;

  std::size_t size() const;
  bool operator==(const PartialLexicon &) const = default;
};

struct MoralStrengthParse {
  PartialLexicon lexicon;
  std::size_t dropped_neutral = 0;  // rows with valence exactly 5
};

// Compiled matcher over numbered groups of patterns. A token counts at most
// once per group no matter how many of the group's patterns it matches.
class TokenMatcher {
 public:
  struct Pattern {
    std::string surface;
    MatchKind kind = MatchKind::kExact;
    double weight = 1.0;
  };

  TokenMatcher() = default;
  explicit TokenMatcher(const std::vector<std::vector<Pattern>> &groups);

  std::size_t group_count() const { return group_count_; }

  // counts[g] is the number of tokens matching group g. When weights is
  // non-null, (*weights)[g] is the sum over those tokens of the largest
  // matching pattern weight.
  void Match(std::span<const std::string> tokens,
             std::vector<std::size_t> &counts,
             std::vector<double> *weights = nullptr) const;

 private:
  struct Hit {
    std::size_t group;
    double weight;
  };
  using HitTable = std::unordered_map<std::string, std::vector<Hit>>;

  std::size_t group_count_ = 0;
  std::size_t max_prefix_len_ = 0;
  HitTable exact_;
  HitTable prefix_;
};

// Moral strength of a valence as a weight in [0, 1]: |v - 5| / 4. Entries
// without valence weigh 1.
double ValenceWeight(const std::optional<double> &valence);

class MergedLexicon {
 public:
  MergedLexicon();
  explicit MergedLexicon(PerDimension<EntrySet> entries);

  const EntrySet &entries(Dimension d) const { return entries_[d.index()]; }
  const PerDimension<EntrySet> &all_entries() const { return entries_; }
  std::size_t size() const;

  // Groups are dimensions in canonical order; weights are ValenceWeight().
  const TokenMatcher &matcher() const { return *matcher_; }

  bool operator==(const MergedLexicon &other) const {
    return entries_ == other.entries_;
  }

 private:
  PerDimension<EntrySet> entries_;
  std::shared_ptr<const TokenMatcher> matcher_;
};

// Fixed analysis categories, in table-row order.
inline constexpr std::size_t kNumCategories = 5;
const std::array<std::string, kNumCategories> &SelectedCategories();

// Row labels used in emitted tables: "Pos. emotion", "Neg. emotion", ...
const std::array<std::string, kNumCategories> &CategoryDisplayNames();

// Maps LIWC short names (posemo, negemo, anx, anger, sad) and spelled-out
// names onto the canonical category name. Other names pass through
// lowercased.
std::string CanonicalCategoryName(std::string_view name);

class CategoryDictionary {
 public:
  using Categories = std::map<std::string, EntrySet>;

  CategoryDictionary();
  explicit CategoryDictionary(Categories categories);

  const Categories &categories() const { return categories_; }
  const std::array<std::string, kNumCategories> &selected() const {
    return SelectedCategories();
  }

  // Groups are all categories in name order.
  const TokenMatcher &matcher() const { return *matcher_; }

  // Position of a category in the matcher's groups.
  std::optional<std::size_t> GroupOf(std::string_view category) const;

 private:
  Categories categories_;
  std::vector<std::string> names_;
  std::shared_ptr<const TokenMatcher> matcher_;
};

// Throws Error with kMalformedHeader, kUnknownCategoryId, kMalformedEntry or
// kEmptyLexicon.
PartialLexicon ParseMfd(std::string_view dic_text);

// Throws Error with kMalformedHeader, kBadValence or kUnknownFoundation.
MoralStrengthParse ParseMoralStrength(std::string_view csv_text);

// Per-dimension union keyed on (surface, kind). Shared keys become
// Source::kBoth and keep whichever side carries a valence (left on ties).
MergedLexicon Merge(const PartialLexicon &a, const PartialLexicon &b);

// LIWC-style .dic. Requires all five selected categories (kMissingCategory).
CategoryDictionary ParseCategoryDictionary(std::string_view dic_text);

// Serializers. WriteMfd/WriteMoralStrength reproduce inputs that parse back
// to the same entries; WriteMergedCsv is the canonical, byte-stable merged
// lexicon file with columns foundation, polarity, surface, match_kind,
// valence, provenance.
std::string WriteMfd(const PartialLexicon &lexicon);
std::string WriteMoralStrength(const PartialLexicon &lexicon);
std::string WriteMergedCsv(const MergedLexicon &lexicon);
MergedLexicon ReadMergedCsv(std::string_view csv_text);

// Match counts per dimension (canonical order) and per category name.
PerDimension<std::size_t> MatchTokens(std::span<const std::string> tokens,
                                      const MergedLexicon &lexicon);
std::map<std::string, std::size_t> MatchTokens(
    std::span<const std::string> tokens, const CategoryDictionary &dict);

}  // namespace moralscope::lexicon

#endif  // MORALSCOPE_LEXICON_H_
