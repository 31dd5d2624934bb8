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

#include <cctype>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gtest/gtest.h"
#include "moralscope/rng.h"
#include "moralscope/util/strings.h"
#include "test_helpers.h"

namespace moralscope::lexicon {
namespace {

using moralscope::testing::DataPath;
using moralscope::testing::FixturePath;

constexpr Dimension kCare(Foundation::kCare, Polarity::kVirtue);
constexpr Dimension kHarm(Foundation::kCare, Polarity::kVice);
constexpr Dimension kFairness(Foundation::kFairness, Polarity::kVirtue);
constexpr Dimension kCheating(Foundation::kFairness, Polarity::kVice);
constexpr Dimension kLoyalty(Foundation::kLoyalty, Polarity::kVirtue);

using Triple = std::tuple<std::size_t, std::string, MatchKind>;

std::set<Triple> Triples(const PerDimension<EntrySet> &entries) {
  std::set<Triple> out;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    for (const auto &[key, e] : entries[d]) out.emplace(d, key.surface, key.kind);
  }
  return out;
}

std::set<std::pair<std::string, MatchKind>> Keys(const EntrySet &set) {
  std::set<std::pair<std::string, MatchKind>> out;
  for (const auto &[key, e] : set) out.emplace(key.surface, key.kind);
  return out;
}

PartialLexicon Partial(
    std::initializer_list<std::tuple<Dimension, std::string, MatchKind>> items,
    Source source = Source::kMfd) {
  PartialLexicon p;
  for (const auto &[d, s, k] : items) {
    p.entries[d.index()].emplace(EntryKey{s, k},
                                 LexiconEntry{s, k, std::nullopt, source});
  }
  return p;
}

PartialLexicon RandomPartial(Xorshift64Star &rng, bool with_valence) {
  static const char *words[] = {"care", "kill", "war", "peace", "fair",
                                "loyal", "holy", "sin", "obey", "riot"};
  PartialLexicon p;
  const std::size_t n = rng.Below(25);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t d = rng.Below(kNumDimensions);
    const std::string s = words[rng.Below(10)];
    const MatchKind k =
        with_valence || rng.Below(2) == 0 ? MatchKind::kExact : MatchKind::kPrefix;
    LexiconEntry e{s, k, std::nullopt,
                   with_valence ? Source::kMoralStrength : Source::kMfd};
    if (with_valence) e.valence = 1.0 + static_cast<double>(rng.Below(9));
    p.entries[d].emplace(e.key(), e);
  }
  return p;
}

TEST(ParseMfdTest, PrefixEntryLandsInViceDimension) {
  const auto p = ParseMfd("%\n01\tHarmVirtue\n02\tHarmVice\n%\nkill*\t02\n");
  EXPECT_EQ(p.size(), 1u);
  ASSERT_EQ(p.entries[kHarm.index()].size(), 1u);
  const LexiconEntry &e = p.entries[kHarm.index()].begin()->second;
  EXPECT_EQ(e.surface, "kill");
  EXPECT_EQ(e.kind, MatchKind::kPrefix);
  EXPECT_FALSE(e.valence.has_value());
}

TEST(ParseMfdTest, HeaderOnlyIsEmptyLexicon) {
  EXPECT_MS_ERROR(ParseMfd("%\n01\tHarmVirtue\n%\n"), ErrorCode::kEmptyLexicon);
}

TEST(ParseMfdTest, MultiIdLineFansOut) {
  const auto p =
      ParseMfd("%\n01\tHarmVirtue\n02\tHarmVice\n%\nsafe\t01 02\n");
  EXPECT_TRUE(p.entries[kCare.index()].contains({"safe", MatchKind::kExact}));
  EXPECT_TRUE(p.entries[kHarm.index()].contains({"safe", MatchKind::kExact}));
  EXPECT_EQ(p.size(), 2u);
}

TEST(ParseMfdTest, Errors) {
  EXPECT_MS_ERROR(ParseMfd("01\tHarmVirtue\nkill\t01\n"),
                  ErrorCode::kMalformedHeader);
  EXPECT_MS_ERROR(ParseMfd("%\n01\tHarmVirtue\nkill\t01\n"),
                  ErrorCode::kMalformedHeader);
  EXPECT_MS_ERROR(ParseMfd("%\n01\tHarmVirtue\n%\nkill\t03\n"),
                  ErrorCode::kUnknownCategoryId);
  EXPECT_MS_ERROR(ParseMfd("%\n01\tFreedomVirtue\n%\nfree\t01\n"),
                  ErrorCode::kMalformedHeader);
}

TEST(ParseMfdTest, MoralityGeneralIgnoredAndCaseFolded) {
  const auto p = ParseMfd(
      "%\n01\tHarmVirtue\n11\tMoralityGeneral\n%\nMoral*\t11\nSAFE\t01 11\n");
  EXPECT_EQ(p.size(), 1u);
  EXPECT_TRUE(p.entries[kCare.index()].contains({"safe", MatchKind::kExact}));
}

TEST(ParseMfdTest, FixtureMatchesHandDerivedEntries) {
  const auto p = ParseMfd(ReadFileOrThrow(FixturePath("mfd_fixture.dic"), "t"));
  using K = MatchKind;
  EXPECT_EQ(Keys(p.entries[kCare.index()]),
            (std::set<std::pair<std::string, K>>{{"safe", K::kExact},
                                                 {"care", K::kExact},
                                                 {"caring", K::kExact},
                                                 {"protect", K::kPrefix}}));
  EXPECT_EQ(Keys(p.entries[kHarm.index()]),
            (std::set<std::pair<std::string, K>>{{"safe", K::kExact},
                                                 {"kill", K::kPrefix},
                                                 {"kill", K::kExact},
                                                 {"hurt", K::kExact},
                                                 {"suffer", K::kPrefix},
                                                 {"war", K::kExact}}));
  EXPECT_EQ(Keys(p.entries[kFairness.index()]),
            (std::set<std::pair<std::string, K>>{{"fair", K::kExact},
                                                 {"justice", K::kExact},
                                                 {"rights", K::kExact}}));
  EXPECT_EQ(Keys(p.entries[kCheating.index()]),
            (std::set<std::pair<std::string, K>>{{"cheat", K::kPrefix},
                                                 {"fraud", K::kExact}}));
  EXPECT_EQ(p.size(), 15u);
}

TEST(ParseMoralStrengthTest, PolarityFromValence) {
  const auto r = ParseMoralStrength(
      "lemma,foundation,valence\ncare,care,8.3\nhurt,care,1.2\nthing,care,5.0\n");
  EXPECT_EQ(r.dropped_neutral, 1u);
  const auto &care = r.lexicon.entries[kCare.index()];
  ASSERT_EQ(care.size(), 1u);
  const LexiconEntry &e = care.begin()->second;
  EXPECT_EQ(e.surface, "care");
  EXPECT_EQ(e.kind, MatchKind::kExact);
  EXPECT_EQ(e.valence, 8.3);
  EXPECT_TRUE(r.lexicon.entries[kHarm.index()].contains({"hurt", MatchKind::kExact}));
  EXPECT_EQ(r.lexicon.size(), 2u);
}

TEST(ParseMoralStrengthTest, Errors) {
  EXPECT_MS_ERROR(ParseMoralStrength("lemma,foundation,valence\nx,care,9.5\n"),
                  ErrorCode::kBadValence);
  EXPECT_MS_ERROR(ParseMoralStrength("lemma,foundation,valence\nx,care,high\n"),
                  ErrorCode::kBadValence);
  EXPECT_MS_ERROR(ParseMoralStrength("lemma,foundation,valence\nx,liberty,7\n"),
                  ErrorCode::kUnknownFoundation);
  EXPECT_MS_ERROR(ParseMoralStrength("word,score\nx,7\n"),
                  ErrorCode::kMalformedHeader);
}

TEST(ParseMoralStrengthTest, FixtureMatchesHandDerivedEntries) {
  const auto r = ParseMoralStrength(
      ReadFileOrThrow(FixturePath("moralstrength_fixture.csv"), "t"));
  EXPECT_EQ(r.dropped_neutral, 2u);
  EXPECT_EQ(r.lexicon.size(), 11u);
  using K = MatchKind;
  EXPECT_EQ(Keys(r.lexicon.entries[kHarm.index()]),
            (std::set<std::pair<std::string, K>>{
                {"hurt", K::kExact}, {"kill", K::kExact}, {"torture", K::kExact}}));
  EXPECT_EQ(r.lexicon.entries[kLoyalty.index()].size(), 1u);
  EXPECT_EQ(r.lexicon.entries[kCheating.index()].begin()->second.valence, 1.5);
}

TEST(MergeTest, UnionWithSharedProvenance) {
  const auto a = Partial({{kCare, "care", MatchKind::kExact},
                          {kCare, "caring", MatchKind::kExact}});
  auto b = Partial({{kCare, "caring", MatchKind::kExact},
                    {kCare, "protect", MatchKind::kExact}},
                   Source::kMoralStrength);
  b.entries[kCare.index()].at({"caring", MatchKind::kExact}).valence = 8.1;
  const MergedLexicon m = Merge(a, b);
  const auto &care = m.entries(kCare);
  EXPECT_EQ(care.size(), 3u);
  const LexiconEntry &caring = care.at({"caring", MatchKind::kExact});
  EXPECT_EQ(caring.source, Source::kBoth);
  EXPECT_EQ(caring.valence, 8.1);
  EXPECT_EQ(care.at({"care", MatchKind::kExact}).source, Source::kMfd);
  EXPECT_EQ(care.at({"protect", MatchKind::kExact}).source,
            Source::kMoralStrength);
}

TEST(MergeTest, EmptyIsIdentity) {
  const auto x = Partial({{kHarm, "kill", MatchKind::kPrefix},
                          {kLoyalty, "loyal", MatchKind::kExact}});
  EXPECT_EQ(Merge(PartialLexicon{}, x).all_entries(), x.entries);
  EXPECT_EQ(Merge(x, PartialLexicon{}).all_entries(), x.entries);
}

TEST(MergeTest, MatchKindIsPartOfKey) {
  const auto a = Partial({{kHarm, "kill", MatchKind::kExact}});
  const auto b = Partial({{kHarm, "kill", MatchKind::kPrefix}});
  EXPECT_EQ(Merge(a, b).entries(kHarm).size(), 2u);
}

TEST(MergeTest, FixturesDropExactlyTheOverlap) {
  const auto a = ParseMfd(ReadFileOrThrow(FixturePath("mfd_fixture.dic"), "t"));
  const auto b = ParseMoralStrength(
                     ReadFileOrThrow(FixturePath("moralstrength_fixture.csv"), "t"))
                     .lexicon;
  const MergedLexicon m = Merge(a, b);
  EXPECT_EQ(m.size(), a.size() + b.size() - 5);
  std::size_t overlap = 0;
  for (Dimension d : AllDimensions()) {
    std::size_t shared = 0;
    for (const auto &[key, e] : m.entries(d)) {
      if (e.source == Source::kBoth) ++shared;
    }
    overlap += shared;
    EXPECT_EQ(m.entries(d).size(),
              a.entries[d.index()].size() + b.entries[d.index()].size() - shared)
        << d.DisplayName();
  }
  EXPECT_EQ(overlap, 5u);
  EXPECT_EQ(m.entries(kCare).size(), 5u);
  EXPECT_EQ(m.entries(kHarm).size(), 7u);
  EXPECT_EQ(m.entries(kFairness).size(), 5u);
  // MoralStrength valence survives on shared keys.
  EXPECT_EQ(m.entries(kHarm).at({"kill", MatchKind::kExact}).valence, 1.1);
}

TEST(MergeTest, CommutativeAndIdempotentOnKeys) {
  Xorshift64Star rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = RandomPartial(rng, false);
    const auto b = RandomPartial(rng, true);
    EXPECT_EQ(Triples(Merge(a, b).all_entries()),
              Triples(Merge(b, a).all_entries()));
    EXPECT_EQ(Merge(a, a).all_entries(), a.entries);
    const auto m = Merge(a, b);
    EXPECT_LE(m.size(), a.size() + b.size());
  }
}

TEST(SerializationTest, MfdRoundTrip) {
  const auto p = ParseMfd(ReadFileOrThrow(DataPath("mfd_sample.dic"), "t"));
  EXPECT_EQ(ParseMfd(WriteMfd(p)), p);
}

TEST(SerializationTest, MoralStrengthRoundTrip) {
  const auto r =
      ParseMoralStrength(ReadFileOrThrow(DataPath("moralstrength_sample.csv"), "t"));
  EXPECT_EQ(ParseMoralStrength(WriteMoralStrength(r.lexicon)).lexicon, r.lexicon);
}

TEST(SerializationTest, MergedCsvRoundTripAndSorted) {
  const auto m = Merge(
      ParseMfd(ReadFileOrThrow(DataPath("mfd_sample.dic"), "t")),
      ParseMoralStrength(ReadFileOrThrow(DataPath("moralstrength_sample.csv"), "t"))
          .lexicon);
  const std::string csv = WriteMergedCsv(m);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "foundation,polarity,surface,match_kind,valence,provenance");
  EXPECT_EQ(ReadMergedCsv(csv), m);
  EXPECT_EQ(WriteMergedCsv(ReadMergedCsv(csv)), csv);
  const auto lines = SplitLines(csv);
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    EXPECT_LT(lines[i - 1], lines[i]);
  }
}

TEST(SerializationTest, BundledSurfacesAreClean) {
  const auto m = Merge(
      ParseMfd(ReadFileOrThrow(DataPath("mfd_sample.dic"), "t")),
      ParseMoralStrength(ReadFileOrThrow(DataPath("moralstrength_sample.csv"), "t"))
          .lexicon);
  for (const auto &set : m.all_entries()) {
    for (const auto &[key, e] : set) {
      EXPECT_FALSE(e.surface.empty());
      EXPECT_EQ(e.surface.find('*'), std::string::npos) << e.surface;
      for (char c : e.surface) {
        EXPECT_FALSE(std::isupper(static_cast<unsigned char>(c))) << e.surface;
        EXPECT_FALSE(std::isspace(static_cast<unsigned char>(c))) << e.surface;
      }
      if (e.valence) {
        EXPECT_GE(*e.valence, 1.0);
        EXPECT_LE(*e.valence, 9.0);
      }
    }
  }
}

TEST(MatchTokensTest, PrefixRule) {
  const MergedLexicon m(Partial({{kHarm, "kill", MatchKind::kPrefix}}).entries);
  const std::vector<std::string> tokens = {"killing"};
  EXPECT_EQ(MatchTokens(tokens, m)[kHarm.index()], 1u);
  const std::vector<std::string> miss = {"skill"};
  EXPECT_EQ(MatchTokens(miss, m)[kHarm.index()], 0u);
}

TEST(MatchTokensTest, CountsTokensNotEntries) {
  const MergedLexicon m(Partial({{kHarm, "kill", MatchKind::kExact},
                                 {kHarm, "kill", MatchKind::kPrefix}})
                            .entries);
  const std::vector<std::string> tokens = {"kill", "killing"};
  EXPECT_EQ(MatchTokens(tokens, m)[kHarm.index()], 2u);
}

TEST(MatchTokensTest, HandCountOnFixture) {
  const MergedLexicon m(Partial({{kCare, "peace", MatchKind::kExact},
                                 {kHarm, "war", MatchKind::kExact}})
                            .entries);
  const std::vector<std::string> tokens = {"peace", "war", "war"};
  const auto counts = MatchTokens(tokens, m);
  EXPECT_EQ(counts[kCare.index()], 1u);
  EXPECT_EQ(counts[kHarm.index()], 2u);
  for (std::size_t d = 2; d < kNumDimensions; ++d) EXPECT_EQ(counts[d], 0u);
}

TEST(MatchTokensTest, TokenMayHitSeveralDimensions) {
  const auto p = ParseMfd(ReadFileOrThrow(FixturePath("mfd_fixture.dic"), "t"));
  const MergedLexicon m(p.entries);
  const std::vector<std::string> tokens = {"safe"};
  const auto counts = MatchTokens(tokens, m);
  EXPECT_EQ(counts[kCare.index()], 1u);
  EXPECT_EQ(counts[kHarm.index()], 1u);
}

TEST(MatchTokensTest, NeverExceedsTokenCount) {
  const auto m = Merge(
      ParseMfd(ReadFileOrThrow(DataPath("mfd_sample.dic"), "t")),
      ParseMoralStrength(ReadFileOrThrow(DataPath("moralstrength_sample.csv"), "t"))
          .lexicon);
  std::vector<std::string> vocab;
  for (const auto &set : m.all_entries()) {
    for (const auto &[key, e] : set) vocab.push_back(e.surface + "ing");
  }
  vocab.push_back("window");
  Xorshift64Star rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> tokens(rng.Below(30));
    for (auto &t : tokens) t = vocab[rng.Below(vocab.size())];
    for (std::size_t c : MatchTokens(tokens, m)) EXPECT_LE(c, tokens.size());
  }
}

TEST(CategoryDictionaryTest, BundledStandIn) {
  const auto dict =
      ParseCategoryDictionary(ReadFileOrThrow(DataPath("liwc_standin.dic"), "t"));
  EXPECT_EQ(dict.selected(),
            (std::array<std::string, kNumCategories>{
                "positive emotion", "negative emotion", "anger", "anxiety",
                "sadness"}));
  const std::vector<std::string> tokens = {"happyish", "worried", "sad",
                                           "window"};
  const auto counts = MatchTokens(tokens, dict);
  EXPECT_EQ(counts.at("positive emotion"), 1u);
  EXPECT_EQ(counts.at("anxiety"), 1u);
  EXPECT_EQ(counts.at("sadness"), 1u);
  EXPECT_EQ(counts.at("anger"), 0u);
}

TEST(CategoryDictionaryTest, MissingCategory) {
  EXPECT_MS_ERROR(ParseCategoryDictionary("%\n1\tposemo\n%\nhappy\t1\n"),
                  ErrorCode::kMissingCategory);
}

TEST(CategoryDictionaryTest, ShortNamesCanonicalize) {
  EXPECT_EQ(CanonicalCategoryName("posemo"), "positive emotion");
  EXPECT_EQ(CanonicalCategoryName("Anx"), "anxiety");
  EXPECT_EQ(CanonicalCategoryName("sad"), "sadness");
}

}  // namespace
}  // namespace moralscope::lexicon
