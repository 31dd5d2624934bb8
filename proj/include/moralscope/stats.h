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

#ifndef MORALSCOPE_STATS_H_
#define MORALSCOPE_STATS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "json.hpp"
#include "moralscope/dimension.h"
#include "moralscope/features.h"
#include "moralscope/lexicon.h"

namespace moralscope::stats {

// Regularized incomplete beta I_x(a, b), evaluated by Lentz's continued
// fraction (at most 300 iterations, stopping once a step changes the value
// by less than 1e-12). y must equal 1 - x; passing it separately avoids
// cancellation when x is close to 1.
double RegularizedIncompleteBeta(double a, double b, double x, double y);

// Product-moment correlation, clamped to [-1, 1]. Throws kLengthMismatch,
// kTooFewSamples (n < 3) or kZeroVariance (a constant series).
double PearsonR(std::span<const double> x, std::span<const double> y);

// Two-sided p for H0: rho = 0 from the Student t statistic
// t = r sqrt((n - 2) / (1 - r^2)) with n - 2 degrees of freedom, which is
// I_{1-r^2}((n - 2) / 2, 1 / 2). |r| = 1 gives 0. Throws kTooFewSamples.
double PValue(double r, std::size_t n);

enum class Stars { kNone, kP05, kP001 };

// p < 0.001 -> kP001; 0.001 <= p < 0.05 -> kP05.
Stars StarsFor(double p);
std::string_view StarsSuffix(Stars stars);  // "", "*", "***"

struct CorrelationCell {
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
  Stars stars = Stars::kNone;
};

// Rows are the five emotion categories, columns the ten dimensions. A cell
// is empty when either series has zero variance.
struct CorrelationMatrix {
  std::size_t n = 0;
  std::array<PerDimension<std::optional<CorrelationCell>>,
             lexicon::kNumCategories>
      cells;

  nlohmann::json ToJson() const;
  static CorrelationMatrix FromJson(const nlohmann::json &j);
};

// Throws kTooFewSamples for fewer than 3 records.
CorrelationMatrix ComputeCorrelationMatrix(
    std::span<const features::FeatureRecord> records);

}  // namespace moralscope::stats

#endif  // MORALSCOPE_STATS_H_
