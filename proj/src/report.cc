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

#include <vector>

#include "moralscope/error.h"
#include "moralscope/util/csv.h"
#include "moralscope/util/strings.h"

namespace moralscope::report {
namespace {

constexpr std::string_view kModule = "report";

// Every text table is a header row plus labelled rows of cell strings.
struct Table {
  std::string corner;
  std::vector<std::string> columns;
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
};

std::vector<std::string> DimensionColumns() {
  std::vector<std::string> columns;
  for (Dimension d : AllDimensions()) columns.emplace_back(d.DisplayName());
  return columns;
}

std::string ToMarkdown(const Table &table) {
  std::string out = "| " + table.corner + " |";
  for (const auto &c : table.columns) out += " " + c + " |";
  out += "\n|:---|";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += "---:|";
  out += "\n";
  for (const auto &[label, cells] : table.rows) {
    out += "| " + label + " |";
    for (const auto &cell : cells) out += " " + cell + " |";
    out += "\n";
  }
  return out;
}

std::string ToCsv(const Table &table) {
  std::vector<std::string> header = {table.corner};
  header.insert(header.end(), table.columns.begin(), table.columns.end());
  std::string out = CsvJoin(header) + "\n";
  for (const auto &[label, cells] : table.rows) {
    std::vector<std::string> row = {label};
    row.insert(row.end(), cells.begin(), cells.end());
    out += CsvJoin(row) + "\n";
  }
  return out;
}

// The rounded value as a JSON number, so JSON and the text formats agree at
// three decimals.
nlohmann::json Rounded(double value) {
  return *ParseDouble(FormatFixed3(value));
}

void CheckMatrix(const stats::CorrelationMatrix &matrix) {
  if (matrix.n < 3) {
    throw Error(kModule, ErrorCode::kIncompleteMatrix,
                "correlation matrix has no samples");
  }
  for (const auto &row : matrix.cells) {
    for (const auto &cell : row) {
      if (cell && (!(cell->r >= -1.0 && cell->r <= 1.0) ||
                   !(cell->p >= 0.0 && cell->p <= 1.0))) {
        throw Error(kModule, ErrorCode::kIncompleteMatrix,
                    "correlation cell out of range");
      }
    }
  }
}

}  // namespace

Format ParseFormat(std::string_view name) {
  const std::string lower = AsciiLower(Trim(name));
  if (lower == "md" || lower == "markdown") return Format::kMarkdown;
  if (lower == "csv") return Format::kCsv;
  if (lower == "json") return Format::kJson;
  throw Error(kModule, ErrorCode::kUnknownFormat,
              "unknown report format '" + std::string(name) + "'");
}

std::string_view FileExtension(Format format) {
  switch (format) {
    case Format::kMarkdown: return "md";
    case Format::kCsv: return "csv";
    case Format::kJson: return "json";
  }
  return "";
}

std::string RenderCorrelation(const stats::CorrelationMatrix &matrix,
                              Format format, bool plain) {
  CheckMatrix(matrix);
  const auto &row_names = lexicon::CategoryDisplayNames();

  if (format == Format::kJson) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t c = 0; c < lexicon::kNumCategories; ++c) {
      nlohmann::json cells = nlohmann::json::array();
      for (const auto &cell : matrix.cells[c]) {
        if (!cell) {
          cells.push_back(nullptr);
          continue;
        }
        nlohmann::json cj = {{"r", Rounded(cell->r)}, {"p", cell->p}};
        if (!plain) cj["stars"] = stats::StarsSuffix(cell->stars);
        cells.push_back(std::move(cj));
      }
      rows.push_back({{"category", row_names[c]}, {"cells", cells}});
    }
    nlohmann::json doc = {
        {"n", matrix.n}, {"columns", DimensionColumns()}, {"rows", rows}};
    return doc.dump(2) + "\n";
  }

  Table table;
  table.columns = DimensionColumns();
  for (std::size_t c = 0; c < lexicon::kNumCategories; ++c) {
    std::vector<std::string> cells;
    for (const auto &cell : matrix.cells[c]) {
      if (!cell) {
        cells.emplace_back(kUndefined);
        continue;
      }
      std::string text = FormatFixed3(cell->r);
      if (!plain) text += stats::StarsSuffix(cell->stars);
      cells.push_back(std::move(text));
    }
    table.rows.emplace_back(row_names[c], std::move(cells));
  }
  return format == Format::kMarkdown ? ToMarkdown(table) : ToCsv(table);
}

std::string RenderF1(std::span<const NamedEval> reports, Format format) {
  if (format == Format::kJson) {
    nlohmann::json rows = nlohmann::json::array();
    for (const NamedEval &e : reports) {
      nlohmann::json f1 = nlohmann::json::array();
      for (const auto &dim : e.report.dimensions) {
        f1.push_back(dim.skipped ? nlohmann::json(nullptr)
                                 : Rounded(dim.mean_f1));
      }
      rows.push_back({{"corpus", e.corpus}, {"folds", e.report.folds},
                      {"f1", f1}});
    }
    nlohmann::json doc = {{"columns", DimensionColumns()}, {"rows", rows}};
    return doc.dump(2) + "\n";
  }

  Table table;
  table.columns = DimensionColumns();
  for (const NamedEval &e : reports) {
    std::vector<std::string> cells;
    for (const auto &dim : e.report.dimensions) {
      cells.push_back(dim.skipped ? std::string(kUndefined)
                                  : FormatFixed3(dim.mean_f1));
    }
    table.rows.emplace_back(e.corpus, std::move(cells));
  }
  return format == Format::kMarkdown ? ToMarkdown(table) : ToCsv(table);
}

}  // namespace moralscope::report
