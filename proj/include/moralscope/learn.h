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

// Per-dimension linear SVMs trained with Pegasos, k-fold splitting and F1
// evaluation.

#ifndef MORALSCOPE_LEARN_H_
#define MORALSCOPE_LEARN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralscope/dimension.h"
#include "moralscope/features.h"

namespace moralscope::learn {

struct TrainConfig {
  double lambda = 1e-3;
  int epochs = 20;
  std::uint64_t seed = 0;
  std::size_t folds = 10;

  // Throws kInvalidConfig.
  void Validate() const;
  // FNV-1a over the canonical rendering of every field plus the feature
  // layout version.
  std::string Hash() const;
};

// Dense row-major matrix with a fixed column count.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(std::size_t cols) : cols_(cols) {}

  // Throws kDimensionMismatch if the row length differs from cols().
  void AddRow(std::span<const double> row);

  std::size_t rows() const { return cols_ == 0 ? 0 : data_.size() / cols_; }
  std::size_t cols() const { return cols_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

 private:
  std::size_t cols_;
  std::vector<double> data_;
};

struct LinearModel {
  Dimension dimension{Foundation::kCare, Polarity::kVirtue};
  std::vector<double> weights;
  double bias = 0.0;
  double lambda = 0.0;
  int epochs = 0;
  std::uint64_t seed = 0;
  std::string feature_layout_version{features::kFeatureLayoutVersion};
  std::string train_config_hash;

  double Decision(std::span<const double> x) const;

  nlohmann::json ToJson() const;
  static LinearModel FromJson(const nlohmann::json &j);
  bool operator==(const LinearModel &) const = default;
};

// Shuffles 0..n-1 with Xorshift64Star(seed) and deals the result
// round-robin into k folds; each fold is returned sorted. Throws
// kInvalidConfig for k < 2 and kTooFewSamples for k > n.
std::vector<std::vector<std::size_t>> KFoldSplit(std::size_t n, std::size_t k,
                                                 std::uint64_t seed);

// Pegasos on the lambda-regularized hinge loss. The bias is an extra
// weight on a constant feature of 1 and is regularized with the others.
// Each epoch visits every sample once in an order reshuffled from the
// seeded generator; step t uses eta = 1 / (lambda t); iterates are
// projected onto the ball of radius 1 / sqrt(lambda). Returns the last
// iterate. Throws kDegenerateLabels for single-class y, kDimensionMismatch
// for shape errors, kInvalidConfig for bad hyperparameters.
LinearModel TrainSvm(const FeatureMatrix &x, std::span<const int> y,
                     const TrainConfig &config,
                     Dimension dimension = Dimension(Foundation::kCare,
                                                     Polarity::kVirtue));

// Mean hinge loss + lambda / 2 * (|w|^2 + b^2).
double Objective(const LinearModel &model, const FeatureMatrix &x,
                 std::span<const int> y, double lambda);

// sign(w.x + b) with 0 mapped to +1. Throws kDimensionMismatch.
int Predict(const LinearModel &model, std::span<const double> x);

struct BinaryMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool zero_division = false;  // some ratio was 0/0 and was set to 0
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t support = 0;  // positives in truth
};

// Positive class is +1. Throws kLengthMismatch.
BinaryMetrics F1(std::span<const int> predictions, std::span<const int> truth);

struct FoldResult {
  BinaryMetrics metrics;
  std::size_t test_size = 0;
  // The training folds held one class only; the fold predicts that class.
  bool single_class_train = false;
};

struct DimensionEval {
  bool skipped = false;  // one class only across the whole corpus
  std::vector<FoldResult> folds;
  double mean_f1 = 0.0;
};

struct EvalReport {
  std::size_t folds = 0;
  std::size_t samples = 0;
  std::string train_config_hash;
  PerDimension<DimensionEval> dimensions;

  nlohmann::json ToJson() const;
  static EvalReport FromJson(const nlohmann::json &j);
};

// Classifier input for a record: its zero-shot features.
FeatureMatrix ZscMatrix(std::span<const features::FeatureRecord> records);

// For every dimension and fold: train on the other folds, test on this one.
// Throws kTooFewSamples when records < folds.
EvalReport CrossValidate(std::span<const features::FeatureRecord> records,
                         const TrainConfig &config);

// One model per dimension on all records; nullopt for single-class
// dimensions.
PerDimension<std::optional<LinearModel>> TrainAll(
    std::span<const features::FeatureRecord> records,
    const TrainConfig &config);

}  // namespace moralscope::learn

#endif  // MORALSCOPE_LEARN_H_
