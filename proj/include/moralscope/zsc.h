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

// Zero-shot label scoring. Every lexicon word of a dimension is a label; a
// backend assigns each label a probability for a document, and the top-k
// mean of a dimension's label scores becomes that dimension's feature.
//
// Two backends share the Scorer interface:
//
//   BuiltinScorer   Embedding cosine. The document vector is the mean of its
//                   in-vocabulary token vectors and a label scores
//                   (cos + 1) / 2; labels missing from the table score 0.5.
//   ExternalScorer  HTTP client for an inference service speaking
//                   POST /score {"text", "labels", "multi_label": true}
//                   -> {"scores": [...]} and GET /health -> {"status":"ok"}.

#ifndef MORALSCOPE_ZSC_H_
#define MORALSCOPE_ZSC_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <semaphore>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "moralscope/dimension.h"
#include "moralscope/lexicon.h"

namespace moralscope::zsc {

inline constexpr std::size_t kDefaultTopK = 5;

struct LabelSet {
  Dimension dimension{Foundation::kCare, Polarity::kVirtue};
  std::vector<std::string> labels;  // sorted, unique, non-empty
};

struct LabelScores {
  Dimension dimension{Foundation::kCare, Polarity::kVirtue};
  std::vector<double> scores;  // aligned with LabelSet::labels, in [0, 1]
};

// Labels of each dimension: the merged-lexicon surfaces with wildcards
// stripped, deduplicated, in sorted order. max_labels > 0 keeps only the
// first max_labels of them. Throws kEmptyLabelSet for a dimension without
// entries.
PerDimension<LabelSet> BuildLabelSets(const lexicon::MergedLexicon &lexicon,
                                      std::size_t max_labels = 0);

class EmbeddingTable {
 public:
  // Text format: "word v1 ... vd" per line, optional "count d" header.
  // Throws kMalformedEmbedding.
  static EmbeddingTable Parse(std::string_view text);
  static EmbeddingTable Load(const std::filesystem::path &path);

  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

  // Throws kMalformedEmbedding on a length mismatch. Replaces existing words.
  void Add(std::string word, std::vector<double> vector);

  const std::vector<double> *Find(std::string_view word) const;
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }

  // Serialized with a header line, words sorted.
  std::string ToText() const;

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Response contract check shared by every backend: one score per label,
// each finite and inside [0, 1]. Throws kProtocolViolation.
void ValidateScores(std::size_t label_count, std::span<const double> scores);

// Throws kNoTokenCoverage when no token is in the table and kZeroVector when
// the document vector or a present label vector has zero norm.
LabelScores ScoreLabelsBuiltin(std::span<const std::string> tokens,
                               const LabelSet &labels,
                               const EmbeddingTable &embeddings);

// Mean of the top min(k, |labels|) scores per dimension, canonical order.
// Throws kMissingDimension unless every dimension appears exactly once, and
// kInvalidConfig for k == 0 or an empty score list.
PerDimension<double> DimensionFeatures(std::span<const LabelScores> scores,
                                       std::size_t k = kDefaultTopK);

class Scorer {
 public:
  virtual ~Scorer() = default;

  // Scores every label set for one document. Must be safe to call from
  // several threads at once.
  virtual std::vector<LabelScores> ScoreAll(
      std::string_view text, std::span<const std::string> tokens,
      std::span<const LabelSet> label_sets) const = 0;
};

class BuiltinScorer : public Scorer {
 public:
  // The table must outlive the scorer.
  explicit BuiltinScorer(const EmbeddingTable &embeddings);

  std::vector<LabelScores> ScoreAll(
      std::string_view text, std::span<const std::string> tokens,
      std::span<const LabelSet> label_sets) const override;

 private:
  const EmbeddingTable &embeddings_;
};

struct EndpointConfig {
  std::string endpoint = "http://127.0.0.1:8080";  // scheme://host[:port]
  std::chrono::milliseconds timeout{10000};
  int retries = 3;  // extra attempts after the first
  std::chrono::milliseconds backoff{100};  // doubled after each failure
  std::size_t max_in_flight = 4;
};

class ExternalScorer : public Scorer {
 public:
  explicit ExternalScorer(EndpointConfig config);
  ~ExternalScorer() override;

  // Throws kServiceUnreachable, kTimeout or kProtocolViolation once retries
  // are exhausted. Protocol violations are not retried.
  LabelScores ScoreLabels(std::string_view text, const LabelSet &labels) const;

  std::vector<LabelScores> ScoreAll(
      std::string_view text, std::span<const std::string> tokens,
      std::span<const LabelSet> label_sets) const override;

  // True when GET /health answers 200 with {"status":"ok"}.
  bool Healthy() const;

  const EndpointConfig &config() const { return config_; }

 private:
  EndpointConfig config_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
};

// One-shot convenience wrapper around ExternalScorer::ScoreLabels.
LabelScores ScoreLabelsExternal(std::string_view text, const LabelSet &labels,
                                const EndpointConfig &config);

}  // namespace moralscope::zsc

#endif  // MORALSCOPE_ZSC_H_
