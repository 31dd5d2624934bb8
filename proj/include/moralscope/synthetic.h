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

// Synthetic corpus with planted correlations, plus an embedding table
// aligned to the lexicon.
//
// Every document has exactly doc_length tokens after normalization, so
// proportions are counts / doc_length and correlations of proportions equal
// correlations of counts. Planted pairs share a binomial component:
//
//   care      = S + A,   positive emotion = S + B,   S ~ Bin(3, p),
//                                                    A, B ~ Bin(2, p)
//   purity-   = T + C,   negative emotion = T + D,   T, C, D ~ Bin(2, p)
//
// giving population correlations 3 / 5 = 0.6 and 2 / 4 = 0.5. Every other
// dimension gets Bin(1, background) words and every other emotion category
// Bin(1, p) words, independently. The rest of the document is neutral
// filler plus one query hashtag.
//
// Embeddings put each dimension on its own axis (a word's vector is the
// normalized sum of the axes of the dimensions it matches, plus Gaussian
// noise); filler words lie on a separate axis with a small norm; emotion
// words and hashtags are left out of the vocabulary.

#ifndef MORALSCOPE_SYNTHETIC_H_
#define MORALSCOPE_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "moralscope/corpus.h"
#include "moralscope/dimension.h"
#include "moralscope/lexicon.h"
#include "moralscope/zsc.h"

namespace moralscope::synthetic {

struct GeneratorConfig {
  std::size_t documents = 2000;
  std::size_t doc_length = 32;
  std::uint64_t seed = 2020;
  double p = 0.3;           // success probability of the planted binomials
  double background = 0.25;  // per-document rate for unplanted dimensions
  std::size_t embedding_dim = 32;
  double embedding_noise = 0.05;
  double filler_norm = 0.1;
  // Extra documents that each fail exactly one corpus filter (country,
  // language, keyword, date window), cycling through the four.
  std::size_t decoys = 0;
};

struct PlantedCell {
  std::size_t category;  // index into lexicon::SelectedCategories()
  Dimension dimension;
  double rho;
};

// (positive emotion, Care) at 0.6 and (negative emotion, Degradation) at
// 0.5.
const std::vector<PlantedCell> &PlantedCells();

// The filter the generated documents satisfy: country CA, languages en/fr,
// the lockdown query keywords, 2020-03-12 .. 2020-05-25.
corpus::FilterSpec SyntheticFilter();

struct SyntheticCorpus {
  std::vector<corpus::Document> documents;  // raw, tokens empty
  zsc::EmbeddingTable embeddings;
};

// Throws kInvalidConfig when the lexicon or dictionary cannot supply words
// that match exactly one dimension or category, or when doc_length is too
// short to hold the planted words.
SyntheticCorpus Generate(const lexicon::MergedLexicon &lexicon,
                         const lexicon::CategoryDictionary &dict,
                         const GeneratorConfig &config = {});

std::string DocumentsToJsonl(const std::vector<corpus::Document> &docs);

}  // namespace moralscope::synthetic

#endif  // MORALSCOPE_SYNTHETIC_H_
