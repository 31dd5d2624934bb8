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

#ifndef MORALSCOPE_FEATURES_H_
#define MORALSCOPE_FEATURES_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "moralscope/dimension.h"
#include "moralscope/lexicon.h"
#include "moralscope/zsc.h"

namespace moralscope::features {

// Identifies the classifier input layout: the ten zero-shot features in
// canonical dimension order.
inline constexpr std::string_view kFeatureLayoutVersion = "zsc10-v1";

using CategoryVector = std::array<double, lexicon::kNumCategories>;

struct FeatureRecord {
  std::string doc_id;
  PerDimension<double> moral_scores{};  // matched-token proportions
  PerDimension<double> zsc_features{};
  CategoryVector liwc{};                // positive emotion .. sadness
  PerDimension<int> weak_labels{};      // -1 / +1
  std::size_t token_count = 0;

  bool operator==(const FeatureRecord &) const = default;
};

// Matched tokens per dimension divided by the token count; zeros for an
// empty token list. With valence_weighted, each matched token contributes
// its moral strength |v - 5| / 4 (1 for entries without valence) instead of
// 1, so scores stay in [0, 1].
PerDimension<double> MoralWordScores(std::span<const std::string> tokens,
                                     const lexicon::MergedLexicon &lexicon,
                                     bool valence_weighted = false);

// Matched-token proportion for each selected category, in table-row order.
// Categories the dictionary lacks score 0.
CategoryVector LiwcFeatures(std::span<const std::string> tokens,
                            const lexicon::CategoryDictionary &dict);

// +1 iff score > threshold. Throws kInvalidConfig for a negative threshold.
PerDimension<int> WeakLabels(const PerDimension<double> &moral_scores,
                             double threshold = 0.0);

struct FeatureOptions {
  bool valence_weighted = false;
  double label_threshold = 0.0;
  std::size_t top_k = zsc::kDefaultTopK;
};

struct BuildResult {
  FeatureRecord record;
  bool zsc_covered = true;  // false when the backend had no token coverage
};

// All feature groups for one normalized document. A document the zero-shot
// backend cannot cover (kNoTokenCoverage) gets the uninformative 0.5 for
// every zsc feature and zsc_covered = false.
BuildResult BuildRecord(std::string_view doc_id, std::string_view text,
                        std::span<const std::string> tokens,
                        const lexicon::MergedLexicon &lexicon,
                        const lexicon::CategoryDictionary &dict,
                        const zsc::Scorer &scorer,
                        std::span<const zsc::LabelSet> label_sets,
                        const FeatureOptions &options);

// CSV columns: doc_id, moral_<dim> x10, zsc_<dim> x10, liwc_<cat> x5,
// label_<dim> x10, token_count. Numbers use the shortest round-trip form.
std::vector<std::string> CsvHeader();
std::string RecordsToCsv(std::span<const FeatureRecord> records);
std::vector<FeatureRecord> RecordsFromCsv(std::string_view text);

nlohmann::json RecordToJson(const FeatureRecord &record);
std::string RecordsToJsonl(std::span<const FeatureRecord> records);

}  // namespace moralscope::features

#endif  // MORALSCOPE_FEATURES_H_
