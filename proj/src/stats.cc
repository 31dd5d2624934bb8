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

#include "moralscope/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "moralscope/error.h"

namespace moralscope::stats {
namespace {

constexpr std::string_view kModule = "stats";
constexpr int kMaxIterations = 300;
constexpr double kTolerance = 1e-12;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) without the front factor.
double BetaContinuedFraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kTolerance) break;
  }
  return h;
}

double LogBeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

bool IsConstant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [&](double x) { return x == v.front(); });
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front =
      a * std::log(x) + b * std::log(y) - LogBeta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * BetaContinuedFraction(b, a, y) / b;
}

double PearsonR(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(kModule, ErrorCode::kLengthMismatch,
                "series lengths differ: " + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()));
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw Error(kModule, ErrorCode::kTooFewSamples,
                "need at least 3 samples, got " + std::to_string(n));
  }
  if (IsConstant(x) || IsConstant(y)) {
    throw Error(kModule, ErrorCode::kZeroVariance, "constant series");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(kModule, ErrorCode::kZeroVariance, "zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double PValue(double r, std::size_t n) {
  if (n < 3) {
    throw Error(kModule, ErrorCode::kTooFewSamples,
                "need at least 3 samples, got " + std::to_string(n));
  }
  const double r2 = std::min(1.0, r * r);
  if (r2 >= 1.0) return 0.0;
  if (r2 == 0.0) return 1.0;
  const double df = static_cast<double>(n - 2);
  const double p = RegularizedIncompleteBeta(df / 2.0, 0.5, 1.0 - r2, r2);
  return std::clamp(p, 0.0, 1.0);
}

Stars StarsFor(double p) {
  if (p < 0.001) return Stars::kP001;
  if (p < 0.05) return Stars::kP05;
  return Stars::kNone;
}

std::string_view StarsSuffix(Stars stars) {
  switch (stars) {
    case Stars::kNone: return "";
    case Stars::kP05: return "*";
    case Stars::kP001: return "***";
  }
  return "";
}

CorrelationMatrix ComputeCorrelationMatrix(
    std::span<const features::FeatureRecord> records) {
  const std::size_t n = records.size();
  if (n < 3) {
    throw Error(kModule, ErrorCode::kTooFewSamples,
                "need at least 3 records, got " + std::to_string(n));
  }
  CorrelationMatrix matrix;
  matrix.n = n;
  std::vector<double> category(n);
  std::vector<double> moral(n);
  for (std::size_t c = 0; c < lexicon::kNumCategories; ++c) {
    for (std::size_t i = 0; i < n; ++i) category[i] = records[i].liwc[c];
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      for (std::size_t i = 0; i < n; ++i) moral[i] = records[i].moral_scores[d];
      if (IsConstant(category) || IsConstant(moral)) continue;
      CorrelationCell cell;
      cell.r = PearsonR(category, moral);
      cell.p = PValue(cell.r, n);
      cell.n = n;
      cell.stars = StarsFor(cell.p);
      matrix.cells[c][d] = cell;
    }
  }
  return matrix;
}

nlohmann::json CorrelationMatrix::ToJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t c = 0; c < lexicon::kNumCategories; ++c) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      const auto &cell = cells[c][d];
      if (!cell) {
        row.push_back(nullptr);
      } else {
        row.push_back({{"r", cell->r}, {"p", cell->p}, {"n", cell->n}});
      }
    }
    rows.push_back(row);
  }
  nlohmann::json columns = nlohmann::json::array();
  for (Dimension d : AllDimensions()) columns.push_back(d.DisplayName());
  return {{"n", n},
          {"rows", lexicon::SelectedCategories()},
          {"columns", columns},
          {"cells", rows}};
}

CorrelationMatrix CorrelationMatrix::FromJson(const nlohmann::json &j) {
  CorrelationMatrix m;
  m.n = j.at("n").get<std::size_t>();
  const auto &rows = j.at("cells");
  if (rows.size() != lexicon::kNumCategories) {
    throw Error(kModule, ErrorCode::kIncompleteMatrix, "wrong row count");
  }
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (rows[c].size() != kNumDimensions) {
      throw Error(kModule, ErrorCode::kIncompleteMatrix, "wrong column count");
    }
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      const auto &cj = rows[c][d];
      if (cj.is_null()) continue;
      CorrelationCell cell;
      cell.r = cj.at("r").get<double>();
      cell.p = cj.at("p").get<double>();
      cell.n = cj.at("n").get<std::size_t>();
      cell.stars = StarsFor(cell.p);
      m.cells[c][d] = cell;
    }
  }
  return m;
}

}  // namespace moralscope::stats
