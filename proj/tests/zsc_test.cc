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

#include "moralscope/zsc.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "moralscope/rng.h"
#include "test_helpers.h"

namespace moralscope::zsc {
namespace {

using Tokens = std::vector<std::string>;

EmbeddingTable TwoDimTable() {
  EmbeddingTable t(2);
  t.Add("care", {1.0, 0.0});
  t.Add("harm", {0.0, 1.0});
  t.Add("help", {0.6, 0.8});
  t.Add("protect", {0.8, 0.6});
  return t;
}

LabelSet Labels(Tokens labels) {
  return LabelSet{Dimension(Foundation::kCare, Polarity::kVirtue),
                  std::move(labels)};
}

std::vector<LabelScores> Uniform(double value, std::size_t n = 3) {
  std::vector<LabelScores> out;
  for (Dimension d : AllDimensions()) {
    out.push_back({d, std::vector<double>(n, value)});
  }
  return out;
}

TEST(BuiltinScoreTest, IdentityScoresOne) {
  const auto t = TwoDimTable();
  const Tokens tokens = {"care"};
  const auto s = ScoreLabelsBuiltin(tokens, Labels({"care"}), t);
  ASSERT_EQ(s.scores.size(), 1u);
  EXPECT_DOUBLE_EQ(s.scores[0], 1.0);
}

TEST(BuiltinScoreTest, OrthogonalScoresMidpoint) {
  const auto t = TwoDimTable();
  const Tokens tokens = {"care"};
  EXPECT_DOUBLE_EQ(ScoreLabelsBuiltin(tokens, Labels({"harm"}), t).scores[0],
                   0.5);
}

TEST(BuiltinScoreTest, MeanDocumentVector) {
  // docvec (0.8, 0.4); cos = 0.88 / sqrt(0.8); score (cos + 1) / 2.
  const auto t = TwoDimTable();
  const Tokens tokens = {"care", "help"};
  const auto s = ScoreLabelsBuiltin(tokens, Labels({"protect"}), t);
  EXPECT_NEAR(s.scores[0], 0.9919349550499538, 1e-12);
}

TEST(BuiltinScoreTest, OutOfVocabularyLabelScoresMidpoint) {
  const auto t = TwoDimTable();
  const Tokens tokens = {"care", "zzz"};
  const auto s = ScoreLabelsBuiltin(tokens, Labels({"care", "unknown"}), t);
  EXPECT_DOUBLE_EQ(s.scores[0], 1.0);
  EXPECT_DOUBLE_EQ(s.scores[1], 0.5);
}

TEST(BuiltinScoreTest, Errors) {
  const auto t = TwoDimTable();
  const Tokens none = {"zzz"};
  EXPECT_MS_ERROR(ScoreLabelsBuiltin(none, Labels({"care"}), t),
                  ErrorCode::kNoTokenCoverage);
  EmbeddingTable z(2);
  z.Add("a", {1.0, 0.0});
  z.Add("b", {-1.0, 0.0});
  const Tokens cancel = {"a", "b"};
  EXPECT_MS_ERROR(ScoreLabelsBuiltin(cancel, Labels({"a"}), z),
                  ErrorCode::kZeroVector);
  z.Add("zero", {0.0, 0.0});
  const Tokens a = {"a"};
  EXPECT_MS_ERROR(ScoreLabelsBuiltin(a, Labels({"zero"}), z),
                  ErrorCode::kZeroVector);
}

TEST(BuiltinScoreTest, PermutationInvariantAndDeterministic) {
  Xorshift64Star rng(8);
  EmbeddingTable t(6);
  Tokens vocab;
  for (int i = 0; i < 30; ++i) {
    std::vector<double> v(6);
    for (double &x : v) x = rng.Gaussian();
    vocab.push_back("w" + std::to_string(i));
    t.Add(vocab.back(), v);
  }
  const LabelSet labels = Labels({"w1", "w2", "w3", "w4", "missing"});
  for (int trial = 0; trial < 50; ++trial) {
    Tokens tokens(1 + rng.Below(12));
    for (auto &tok : tokens) tok = vocab[rng.Below(vocab.size())];
    const auto base = ScoreLabelsBuiltin(tokens, labels, t);
    EXPECT_EQ(ScoreLabelsBuiltin(tokens, labels, t).scores, base.scores);
    Tokens shuffled = tokens;
    rng.Shuffle(std::span<std::string>(shuffled));
    const auto perm = ScoreLabelsBuiltin(shuffled, labels, t);
    for (std::size_t i = 0; i < base.scores.size(); ++i) {
      EXPECT_NEAR(perm.scores[i], base.scores[i], 1e-12);
      EXPECT_GE(base.scores[i], 0.0);
      EXPECT_LE(base.scores[i], 1.0);
    }
  }
}

TEST(DimensionFeaturesTest, ConstantScores) {
  const auto f = DimensionFeatures(Uniform(0.5));
  for (double v : f) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(DimensionFeaturesTest, TopOneIsMax) {
  auto scores = Uniform(0.5);
  scores[0].scores = {1.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(DimensionFeatures(scores, 1)[0], 1.0);
}

TEST(DimensionFeaturesTest, TopTwoMean) {
  auto scores = Uniform(0.5);
  scores[3].scores = {0.1, 0.9, 0.1, 0.7};
  EXPECT_DOUBLE_EQ(DimensionFeatures(scores, 2)[3], 0.8);
}

TEST(DimensionFeaturesTest, KLargerThanLabelCount) {
  auto scores = Uniform(0.5);
  scores[2].scores = {0.2, 0.4};
  EXPECT_DOUBLE_EQ(DimensionFeatures(scores, 5)[2], 0.30000000000000004);
}

TEST(DimensionFeaturesTest, OrderFollowsDimensionNotInput) {
  auto scores = Uniform(0.5);
  scores[9].scores = {0.9};
  std::reverse(scores.begin(), scores.end());
  EXPECT_DOUBLE_EQ(DimensionFeatures(scores)[9], 0.9);
}

TEST(DimensionFeaturesTest, Errors) {
  auto scores = Uniform(0.5);
  scores.pop_back();
  EXPECT_MS_ERROR(DimensionFeatures(scores), ErrorCode::kMissingDimension);
  auto dup = Uniform(0.5);
  dup[9].dimension = dup[0].dimension;
  EXPECT_MS_ERROR(DimensionFeatures(dup), ErrorCode::kMissingDimension);
  EXPECT_MS_ERROR(DimensionFeatures(Uniform(0.5), 0), ErrorCode::kInvalidConfig);
}

TEST(DimensionFeaturesTest, MonotoneInEachScore) {
  Xorshift64Star rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<LabelScores> scores;
    for (Dimension d : AllDimensions()) {
      std::vector<double> s(1 + rng.Below(9));
      for (double &x : s) x = rng.Uniform();
      scores.push_back({d, s});
    }
    const std::size_t k = 1 + rng.Below(6);
    const auto before = DimensionFeatures(scores, k);
    const std::size_t d = rng.Below(kNumDimensions);
    auto &target = scores[d].scores[rng.Below(scores[d].scores.size())];
    target = std::min(1.0, target + rng.Uniform());
    const auto after = DimensionFeatures(scores, k);
    for (std::size_t i = 0; i < kNumDimensions; ++i) {
      EXPECT_GE(after[i], before[i]);
      EXPECT_GE(after[i], 0.0);
      EXPECT_LE(after[i], 1.0);
    }
  }
}

TEST(ValidateScoresTest, Contract) {
  const std::vector<double> ok = {0.91, 0.12};
  ValidateScores(2, ok);
  EXPECT_MS_ERROR(ValidateScores(3, ok), ErrorCode::kProtocolViolation);
  const std::vector<double> high = {1.3, 0.1};
  EXPECT_MS_ERROR(ValidateScores(2, high), ErrorCode::kProtocolViolation);
  const std::vector<double> nan = {std::numeric_limits<double>::quiet_NaN()};
  EXPECT_MS_ERROR(ValidateScores(1, nan), ErrorCode::kProtocolViolation);
}

TEST(EmbeddingTableTest, ParseAndSerialize) {
  const auto t = EmbeddingTable::Parse("2 2\nb 0 1\na 1 0.5\n");
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_EQ(t.size(), 2u);
  ASSERT_NE(t.Find("a"), nullptr);
  EXPECT_EQ((*t.Find("a"))[1], 0.5);
  EXPECT_EQ(t.Find("c"), nullptr);
  const auto again = EmbeddingTable::Parse(t.ToText());
  EXPECT_EQ(again.ToText(), t.ToText());
  EXPECT_MS_ERROR(EmbeddingTable::Parse("a 1 2\nb 1\n"),
                  ErrorCode::kMalformedEmbedding);
  EXPECT_MS_ERROR(EmbeddingTable::Parse("a 1 x\n"),
                  ErrorCode::kMalformedEmbedding);
}

TEST(LabelSetTest, SortedUniqueWithoutWildcards) {
  using lexicon::EntryKey;
  using lexicon::LexiconEntry;
  using lexicon::MatchKind;
  const auto add = [](lexicon::EntrySet &set, std::string surface,
                      MatchKind kind) {
    set.emplace(EntryKey{surface, kind},
                LexiconEntry{surface, kind, std::nullopt, lexicon::Source::kMfd});
  };
  PerDimension<lexicon::EntrySet> entries;
  for (Dimension d : AllDimensions()) {
    add(entries[d.index()], "w" + std::string(d.Key()), MatchKind::kExact);
  }
  auto &care = entries[0];
  add(care, "kill", MatchKind::kPrefix);
  add(care, "kill", MatchKind::kExact);
  add(care, "abc", MatchKind::kExact);
  const auto sets = BuildLabelSets(lexicon::MergedLexicon(entries));
  EXPECT_EQ(sets[0].labels, (Tokens{"abc", "kill", "wCareVirtue"}));
  EXPECT_EQ(BuildLabelSets(lexicon::MergedLexicon(entries), 2)[0].labels,
            (Tokens{"abc", "kill"}));
  entries[4].clear();
  EXPECT_MS_ERROR(BuildLabelSets(lexicon::MergedLexicon(entries)),
                  ErrorCode::kEmptyLabelSet);
}

}  // namespace
}  // namespace moralscope::zsc
