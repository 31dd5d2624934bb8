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

#include "moralscope/report.h"

#include <clocale>
#include <optional>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "moralscope/util/csv.h"
#include "moralscope/util/strings.h"
#include "test_helpers.h"

namespace moralscope::report {
namespace {

using moralscope::testing::FixturePath;

// r values chosen to exercise rounding ties, signed zero and the extremes;
// the golden file was rendered from the formatting rules independently.
constexpr double kNone = 99.0;
constexpr double kR[5][10] = {
    {0.1505, -0.1505, 0.0, -0.0004, 0.9995, 1.0, -1.0, 0.123, 0.4444, -0.25},
    {0.2, 0.0005, -0.0005, 0.3335, 0.5, 0.6, 0.7, 0.8, 0.9, -0.999},
    {0.01, 0.02, 0.03, 0.04, 0.05, 0.06, kNone, 0.08, 0.09, 0.1},
    {-0.111, 0.222, -0.333, 0.444, -0.555, 0.666, -0.777, 0.888, -0.999, 0.0},
    {0.6044, 0.5031, 0.0123, -0.0456, 0.0789, 0.1011, 0.1212, 0.1313, 0.1414,
     kNone}};
constexpr double kP[5] = {0.0004, 0.001, 0.02, 0.05, 0.3};

stats::CorrelationMatrix FixtureMatrix() {
  stats::CorrelationMatrix m;
  m.n = 100;
  for (std::size_t c = 0; c < 5; ++c) {
    for (std::size_t d = 0; d < 10; ++d) {
      if (kR[c][d] == kNone) continue;
      const double p = kP[(c + d) % 5];
      m.cells[c][d] = stats::CorrelationCell{kR[c][d], p, 100, stats::StarsFor(p)};
    }
  }
  return m;
}

learn::EvalReport EvalWith(double f1, std::optional<std::size_t> skipped = {}) {
  learn::EvalReport r;
  r.folds = 10;
  r.samples = 100;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    r.dimensions[d].mean_f1 = f1;
    r.dimensions[d].skipped = skipped == d;
  }
  return r;
}

TEST(RenderCorrelationTest, MarkdownMatchesGolden) {
  const std::string golden =
      ReadFileOrThrow(FixturePath("correlation_golden.md"), "t");
  EXPECT_EQ(RenderCorrelation(FixtureMatrix(), Format::kMarkdown), golden);
}

TEST(RenderCorrelationTest, CellFormatting) {
  stats::CorrelationMatrix m = FixtureMatrix();
  const std::string md = RenderCorrelation(m, Format::kMarkdown);
  EXPECT_NE(md.find("| Pos. emotion | 0.151*** |"), std::string::npos);
  EXPECT_NE(md.find("| Sadness |"), std::string::npos);
  EXPECT_NE(md.find(std::string(kUndefined) + " |\n"), std::string::npos);
  const std::string plain = RenderCorrelation(m, Format::kMarkdown, true);
  EXPECT_EQ(plain.find('*'), std::string::npos);
  EXPECT_NE(plain.find("| Pos. emotion | 0.151 |"), std::string::npos);
}

TEST(RenderCorrelationTest, CsvAndJsonAgreeAtThreeDecimals) {
  const auto m = FixtureMatrix();
  const auto rows = ReadCsv(RenderCorrelation(m, Format::kCsv, true));
  const auto json =
      nlohmann::json::parse(RenderCorrelation(m, Format::kJson, true));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].fields[1], "Care");
  EXPECT_EQ(rows[0].fields[10], "Degradation");
  EXPECT_EQ(json.at("columns").size(), 10u);
  for (std::size_t c = 0; c < 5; ++c) {
    const auto &jrow = json.at("rows")[c];
    EXPECT_EQ(rows[c + 1].fields[0], jrow.at("category").get<std::string>());
    for (std::size_t d = 0; d < 10; ++d) {
      const std::string &text = rows[c + 1].fields[d + 1];
      const auto &cell = jrow.at("cells")[d];
      if (!m.cells[c][d]) {
        EXPECT_EQ(text, kUndefined);
        EXPECT_TRUE(cell.is_null());
        continue;
      }
      EXPECT_EQ(*ParseDouble(text), cell.at("r").get<double>()) << c << d;
    }
  }
}

TEST(RenderCorrelationTest, IncompleteMatrix) {
  stats::CorrelationMatrix empty;
  EXPECT_MS_ERROR(RenderCorrelation(empty, Format::kMarkdown),
                  ErrorCode::kIncompleteMatrix);
  auto bad = FixtureMatrix();
  bad.cells[0][0]->r = 1.5;
  EXPECT_MS_ERROR(RenderCorrelation(bad, Format::kCsv),
                  ErrorCode::kIncompleteMatrix);
}

TEST(RenderCorrelationTest, LocaleIndependent) {
  const std::string before = RenderCorrelation(FixtureMatrix(), Format::kCsv);
  const char *old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) {
    GTEST_SKIP() << "de_DE locale not installed";
  }
  const std::string after = RenderCorrelation(FixtureMatrix(), Format::kCsv);
  std::setlocale(LC_NUMERIC, saved.c_str());
  EXPECT_EQ(after, before);
}

TEST(RenderF1Test, PerfectClassifier) {
  const std::vector<NamedEval> reports = {{"lockdown", EvalWith(1.0)}};
  const std::string md = RenderF1(reports, Format::kMarkdown);
  EXPECT_EQ(md,
            "|  | Care | Harm | Fairness | Cheating | Loyalty | Betrayal | "
            "Authority | Subversion | Purity | Degradation |\n"
            "|:---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n"
            "| lockdown | 1.000 | 1.000 | 1.000 | 1.000 | 1.000 | 1.000 | "
            "1.000 | 1.000 | 1.000 | 1.000 |\n");
}

TEST(RenderF1Test, SkippedDimension) {
  const std::vector<NamedEval> reports = {{"c", EvalWith(0.6505, 4)}};
  const auto rows = ReadCsv(RenderF1(reports, Format::kCsv));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].fields[1], "0.651");
  EXPECT_EQ(rows[1].fields[5], kUndefined);
  const auto json = nlohmann::json::parse(RenderF1(reports, Format::kJson));
  EXPECT_TRUE(json.at("rows")[0].at("f1")[4].is_null());
  EXPECT_EQ(json.at("rows")[0].at("f1")[0].get<double>(), 0.651);
}

TEST(RenderF1Test, TwoCorpora) {
  const std::vector<NamedEval> reports = {{"lockdown", EvalWith(0.7)},
                                          {"wexit", EvalWith(0.6)}};
  const auto rows = ReadCsv(RenderF1(reports, Format::kCsv));
  ASSERT_EQ(rows.size(), 3u);
  ASSERT_EQ(rows[0].fields.size(), 11u);
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    EXPECT_EQ(rows[0].fields[d + 1], Dimension::FromIndex(d).DisplayName());
  }
  EXPECT_EQ(rows[1].fields[0], "lockdown");
  EXPECT_EQ(rows[2].fields[0], "wexit");
  EXPECT_EQ(rows[2].fields[10], "0.600");
  EXPECT_EQ(RenderF1(reports, Format::kMarkdown),
            RenderF1(reports, Format::kMarkdown));
}

TEST(FormatTest, Names) {
  EXPECT_EQ(ParseFormat("markdown"), Format::kMarkdown);
  EXPECT_EQ(FileExtension(ParseFormat("CSV")), "csv");
  EXPECT_MS_ERROR(ParseFormat("xlsx"), ErrorCode::kUnknownFormat);
}

}  // namespace
}  // namespace moralscope::report
