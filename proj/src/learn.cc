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

#include "moralscope/learn.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "moralscope/error.h"
#include "moralscope/rng.h"
#include "moralscope/util/strings.h"

namespace moralscope::learn {
namespace {

constexpr std::string_view kModule = "learn";

[[noreturn]] void Fail(ErrorCode code, const std::string &message) {
  throw Error(kModule, code, message);
}

std::vector<int> LabelColumn(std::span<const features::FeatureRecord> records,
                             std::size_t d) {
  std::vector<int> y;
  y.reserve(records.size());
  for (const auto &r : records) y.push_back(r.weak_labels[d]);
  return y;
}

bool HasBothClasses(std::span<const int> y) {
  bool pos = false;
  bool neg = false;
  for (int v : y) (v > 0 ? pos : neg) = true;
  return pos && neg;
}

nlohmann::json MetricsToJson(const BinaryMetrics &m) {
  return {{"precision", m.precision}, {"recall", m.recall},
          {"f1", m.f1},               {"zero_division", m.zero_division},
          {"tp", m.tp},               {"fp", m.fp},
          {"fn", m.fn},               {"support", m.support}};
}

BinaryMetrics MetricsFromJson(const nlohmann::json &j) {
  BinaryMetrics m;
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  m.zero_division = j.at("zero_division").get<bool>();
  m.tp = j.at("tp").get<std::size_t>();
  m.fp = j.at("fp").get<std::size_t>();
  m.fn = j.at("fn").get<std::size_t>();
  m.support = j.at("support").get<std::size_t>();
  return m;
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    Fail(ErrorCode::kInvalidConfig, "lambda must be positive");
  }
  if (epochs <= 0) Fail(ErrorCode::kInvalidConfig, "epochs must be positive");
  if (folds < 2) Fail(ErrorCode::kInvalidConfig, "folds must be at least 2");
}

std::string TrainConfig::Hash() const {
  return Fnv1aHex("lambda=" + FormatDouble(lambda) +
                  ";epochs=" + std::to_string(epochs) +
                  ";seed=" + std::to_string(seed) +
                  ";folds=" + std::to_string(folds) +
                  ";layout=" + std::string(features::kFeatureLayoutVersion));
}

void FeatureMatrix::AddRow(std::span<const double> row) {
  if (row.size() != cols_) {
    Fail(ErrorCode::kDimensionMismatch,
         "row has " + std::to_string(row.size()) + " features, expected " +
             std::to_string(cols_));
  }
  data_.insert(data_.end(), row.begin(), row.end());
}

double LinearModel::Decision(std::span<const double> x) const {
  double sum = bias;
  for (std::size_t i = 0; i < x.size(); ++i) sum += weights[i] * x[i];
  return sum;
}

nlohmann::json LinearModel::ToJson() const {
  return {{"dimension", dimension.DisplayName()},
          {"weights", weights},
          {"bias", bias},
          {"lambda", lambda},
          {"epochs", epochs},
          {"seed", seed},
          {"feature_layout_version", feature_layout_version},
          {"train_config_hash", train_config_hash}};
}

LinearModel LinearModel::FromJson(const nlohmann::json &j) {
  LinearModel m;
  const auto dim = ParseDimension(j.at("dimension").get<std::string>());
  if (!dim) Fail(ErrorCode::kIo, "model file names an unknown dimension");
  m.dimension = *dim;
  m.weights = j.at("weights").get<std::vector<double>>();
  m.bias = j.at("bias").get<double>();
  m.lambda = j.at("lambda").get<double>();
  m.epochs = j.at("epochs").get<int>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.feature_layout_version = j.at("feature_layout_version").get<std::string>();
  m.train_config_hash = j.value("train_config_hash", "");
  return m;
}

std::vector<std::vector<std::size_t>> KFoldSplit(std::size_t n, std::size_t k,
                                                 std::uint64_t seed) {
  if (k < 2) Fail(ErrorCode::kInvalidConfig, "folds must be at least 2");
  if (k > n) {
    Fail(ErrorCode::kTooFewSamples,
         std::to_string(k) + " folds need at least as many samples, got " +
             std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Xorshift64Star rng(seed);
  rng.Shuffle(std::span<std::size_t>(order));
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
  for (auto &fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

LinearModel TrainSvm(const FeatureMatrix &x, std::span<const int> y,
                     const TrainConfig &config, Dimension dimension) {
  if (!(config.lambda > 0.0) || config.epochs <= 0) {
    Fail(ErrorCode::kInvalidConfig, "lambda and epochs must be positive");
  }
  const std::size_t n = x.rows();
  if (n == 0) Fail(ErrorCode::kDimensionMismatch, "empty feature matrix");
  if (y.size() != n) {
    Fail(ErrorCode::kDimensionMismatch,
         std::to_string(y.size()) + " labels for " + std::to_string(n) +
             " rows");
  }
  if (!HasBothClasses(y)) {
    Fail(ErrorCode::kDegenerateLabels, "labels contain a single class");
  }

  const std::size_t d = x.cols();
  const double lambda = config.lambda;
  const double radius = 1.0 / std::sqrt(lambda);
  std::vector<double> w(d, 0.0);
  double b = 0.0;

  Xorshift64Star rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const auto xi = x.row(i);
      const double yi = y[i] > 0 ? 1.0 : -1.0;
      double score = b;
      for (std::size_t j = 0; j < d; ++j) score += w[j] * xi[j];

      const double shrink = 1.0 - eta * lambda;
      for (double &wj : w) wj *= shrink;
      b *= shrink;
      if (yi * score < 1.0) {
        for (std::size_t j = 0; j < d; ++j) w[j] += eta * yi * xi[j];
        b += eta * yi;
      }

      double norm2 = b * b;
      for (double wj : w) norm2 += wj * wj;
      if (norm2 > radius * radius) {
        const double scale = radius / std::sqrt(norm2);
        for (double &wj : w) wj *= scale;
        b *= scale;
      }
    }
  }

  LinearModel model;
  model.dimension = dimension;
  model.weights = std::move(w);
  model.bias = b;
  model.lambda = lambda;
  model.epochs = config.epochs;
  model.seed = config.seed;
  model.train_config_hash = config.Hash();
  return model;
}

double Objective(const LinearModel &model, const FeatureMatrix &x,
                 std::span<const int> y, double lambda) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double yi = y[i] > 0 ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - yi * model.Decision(x.row(i)));
  }
  double norm2 = model.bias * model.bias;
  for (double wj : model.weights) norm2 += wj * wj;
  return hinge / static_cast<double>(x.rows()) + 0.5 * lambda * norm2;
}

int Predict(const LinearModel &model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "input has " + std::to_string(x.size()) + " features, model has " +
             std::to_string(model.weights.size()));
  }
  return model.Decision(x) >= 0.0 ? 1 : -1;
}

BinaryMetrics F1(std::span<const int> predictions, std::span<const int> truth) {
  if (predictions.size() != truth.size()) {
    Fail(ErrorCode::kLengthMismatch,
         std::to_string(predictions.size()) + " predictions for " +
             std::to_string(truth.size()) + " labels");
  }
  BinaryMetrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool p = predictions[i] > 0;
    const bool t = truth[i] > 0;
    if (t) ++m.support;
    if (p && t) ++m.tp;
    if (p && !t) ++m.fp;
    if (!p && t) ++m.fn;
  }
  const auto ratio = [&](double num, double den) {
    if (den == 0.0) {
      m.zero_division = true;
      return 0.0;
    }
    return num / den;
  };
  m.precision = ratio(m.tp, static_cast<double>(m.tp + m.fp));
  m.recall = ratio(m.tp, static_cast<double>(m.tp + m.fn));
  m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
  return m;
}

FeatureMatrix ZscMatrix(std::span<const features::FeatureRecord> records) {
  FeatureMatrix x(kNumDimensions);
  for (const auto &r : records) x.AddRow(r.zsc_features);
  return x;
}

EvalReport CrossValidate(std::span<const features::FeatureRecord> records,
                         const TrainConfig &config) {
  config.Validate();
  if (records.size() < config.folds) {
    Fail(ErrorCode::kTooFewSamples,
         std::to_string(records.size()) + " records for " +
             std::to_string(config.folds) + " folds");
  }
  const auto folds = KFoldSplit(records.size(), config.folds, config.seed);
  const FeatureMatrix x = ZscMatrix(records);

  EvalReport report;
  report.folds = config.folds;
  report.samples = records.size();
  report.train_config_hash = config.Hash();
  for (Dimension dim : AllDimensions()) {
    DimensionEval &eval = report.dimensions[dim.index()];
    const std::vector<int> y = LabelColumn(records, dim.index());
    if (!HasBothClasses(y)) {
      eval.skipped = true;
      continue;
    }
    double f1_sum = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      FeatureMatrix train_x(kNumDimensions);
      std::vector<int> train_y;
      for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g == f) continue;
        for (std::size_t i : folds[g]) {
          train_x.AddRow(x.row(i));
          train_y.push_back(y[i]);
        }
      }
      FoldResult result;
      result.test_size = folds[f].size();
      std::vector<int> predictions;
      std::vector<int> truth;
      if (HasBothClasses(train_y)) {
        const LinearModel model = TrainSvm(train_x, train_y, config, dim);
        for (std::size_t i : folds[f]) {
          predictions.push_back(Predict(model, x.row(i)));
          truth.push_back(y[i]);
        }
      } else {
        result.single_class_train = true;
        for (std::size_t i : folds[f]) {
          predictions.push_back(train_y.front());
          truth.push_back(y[i]);
        }
      }
      result.metrics = F1(predictions, truth);
      f1_sum += result.metrics.f1;
      eval.folds.push_back(result);
    }
    eval.mean_f1 = f1_sum / static_cast<double>(folds.size());
  }
  return report;
}

PerDimension<std::optional<LinearModel>> TrainAll(
    std::span<const features::FeatureRecord> records,
    const TrainConfig &config) {
  config.Validate();
  const FeatureMatrix x = ZscMatrix(records);
  PerDimension<std::optional<LinearModel>> models;
  for (Dimension dim : AllDimensions()) {
    const std::vector<int> y = LabelColumn(records, dim.index());
    if (!HasBothClasses(y)) continue;
    models[dim.index()] = TrainSvm(x, y, config, dim);
  }
  return models;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json dims = nlohmann::json::array();
  for (Dimension d : AllDimensions()) {
    const DimensionEval &e = dimensions[d.index()];
    nlohmann::json folds_json = nlohmann::json::array();
    for (const FoldResult &f : e.folds) {
      folds_json.push_back({{"metrics", MetricsToJson(f.metrics)},
                            {"test_size", f.test_size},
                            {"single_class_train", f.single_class_train}});
    }
    dims.push_back({{"dimension", d.DisplayName()},
                    {"skipped", e.skipped},
                    {"mean_f1", e.skipped ? nlohmann::json(nullptr)
                                          : nlohmann::json(e.mean_f1)},
                    {"folds", folds_json}});
  }
  return {{"folds", folds},
          {"samples", samples},
          {"train_config_hash", train_config_hash},
          {"dimensions", dims}};
}

EvalReport EvalReport::FromJson(const nlohmann::json &j) {
  EvalReport report;
  report.folds = j.at("folds").get<std::size_t>();
  report.samples = j.at("samples").get<std::size_t>();
  report.train_config_hash = j.value("train_config_hash", "");
  for (const auto &dj : j.at("dimensions")) {
    const auto dim = ParseDimension(dj.at("dimension").get<std::string>());
    if (!dim) Fail(ErrorCode::kIo, "evaluation names an unknown dimension");
    DimensionEval &e = report.dimensions[dim->index()];
    e.skipped = dj.at("skipped").get<bool>();
    if (!e.skipped) e.mean_f1 = dj.at("mean_f1").get<double>();
    for (const auto &fj : dj.at("folds")) {
      FoldResult f;
      f.metrics = MetricsFromJson(fj.at("metrics"));
      f.test_size = fj.at("test_size").get<std::size_t>();
      f.single_class_train = fj.at("single_class_train").get<bool>();
      e.folds.push_back(f);
    }
  }
  return report;
}

}  // namespace moralscope::learn
