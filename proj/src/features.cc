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

#include "moralscope/features.h"

#include "moralscope/error.h"
#include "moralscope/util/csv.h"
#include "moralscope/util/strings.h"

namespace moralscope::features {
namespace {

constexpr std::string_view kModule = "features";
constexpr std::size_t kColumns = 1 + 10 + 10 + 5 + 10 + 1;

std::string ColumnSuffix(std::string_view name) {
  std::string out;
  for (char c : AsciiLower(name)) out.push_back(c == ' ' ? '_' : c);
  return out;
}

[[noreturn]] void BadCsv(std::size_t line, const std::string &what) {
  throw Error(kModule, ErrorCode::kIo,
              "features CSV line " + std::to_string(line) + ": " + what);
}

}  // namespace

PerDimension<double> MoralWordScores(std::span<const std::string> tokens,
                                     const lexicon::MergedLexicon &lexicon,
                                     bool valence_weighted) {
  PerDimension<double> scores{};
  if (tokens.empty()) return scores;
  std::vector<std::size_t> counts;
  std::vector<double> weights;
  lexicon.matcher().Match(tokens, counts, valence_weighted ? &weights : nullptr);
  const double n = static_cast<double>(tokens.size());
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    const double numerator =
        valence_weighted ? weights[d] : static_cast<double>(counts[d]);
    scores[d] = numerator / n;
  }
  return scores;
}

CategoryVector LiwcFeatures(std::span<const std::string> tokens,
                            const lexicon::CategoryDictionary &dict) {
  CategoryVector out{};
  if (tokens.empty()) return out;
  std::vector<std::size_t> counts;
  dict.matcher().Match(tokens, counts);
  const double n = static_cast<double>(tokens.size());
  const auto &selected = dict.selected();
  for (std::size_t c = 0; c < selected.size(); ++c) {
    if (const auto group = dict.GroupOf(selected[c])) {
      out[c] = static_cast<double>(counts[*group]) / n;
    }
  }
  return out;
}

PerDimension<int> WeakLabels(const PerDimension<double> &moral_scores,
                             double threshold) {
  if (!(threshold >= 0.0)) {
    throw Error(kModule, ErrorCode::kInvalidConfig,
                "weak-label threshold must be >= 0");
  }
  PerDimension<int> labels{};
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    labels[d] = moral_scores[d] > threshold ? 1 : -1;
  }
  return labels;
}

BuildResult BuildRecord(std::string_view doc_id, std::string_view text,
                        std::span<const std::string> tokens,
                        const lexicon::MergedLexicon &lexicon,
                        const lexicon::CategoryDictionary &dict,
                        const zsc::Scorer &scorer,
                        std::span<const zsc::LabelSet> label_sets,
                        const FeatureOptions &options) {
  BuildResult result;
  FeatureRecord &r = result.record;
  r.doc_id = std::string(doc_id);
  r.token_count = tokens.size();
  r.moral_scores = MoralWordScores(tokens, lexicon, options.valence_weighted);
  r.liwc = LiwcFeatures(tokens, dict);
  r.weak_labels = WeakLabels(r.moral_scores, options.label_threshold);
  try {
    const auto scores = scorer.ScoreAll(text, tokens, label_sets);
    r.zsc_features = zsc::DimensionFeatures(scores, options.top_k);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kNoTokenCoverage) throw;
    r.zsc_features.fill(0.5);
    result.zsc_covered = false;
  }
  return result;
}

std::vector<std::string> CsvHeader() {
  std::vector<std::string> header = {"doc_id"};
  for (Dimension d : AllDimensions()) {
    header.push_back("moral_" + ColumnSuffix(d.DisplayName()));
  }
  for (Dimension d : AllDimensions()) {
    header.push_back("zsc_" + ColumnSuffix(d.DisplayName()));
  }
  for (const std::string &c : lexicon::SelectedCategories()) {
    header.push_back("liwc_" + ColumnSuffix(c));
  }
  for (Dimension d : AllDimensions()) {
    header.push_back("label_" + ColumnSuffix(d.DisplayName()));
  }
  header.push_back("token_count");
  return header;
}

std::string RecordsToCsv(std::span<const FeatureRecord> records) {
  std::string out = CsvJoin(CsvHeader()) + "\n";
  for (const FeatureRecord &r : records) {
    std::vector<std::string> row = {r.doc_id};
    for (double x : r.moral_scores) row.push_back(FormatDouble(x));
    for (double x : r.zsc_features) row.push_back(FormatDouble(x));
    for (double x : r.liwc) row.push_back(FormatDouble(x));
    for (int y : r.weak_labels) row.push_back(std::to_string(y));
    row.push_back(std::to_string(r.token_count));
    out += CsvJoin(row);
    out.push_back('\n');
  }
  return out;
}

std::vector<FeatureRecord> RecordsFromCsv(std::string_view text) {
  CsvReader reader(text);
  const auto header = reader.Next();
  if (!header || header->fields != CsvHeader()) {
    throw Error(kModule, ErrorCode::kIo, "unexpected features CSV header");
  }
  std::vector<FeatureRecord> records;
  while (auto row = reader.Next()) {
    const auto &f = row->fields;
    if (row->malformed || f.size() != kColumns) BadCsv(row->line, "bad row");
    FeatureRecord r;
    r.doc_id = f[0];
    std::size_t col = 1;
    const auto number = [&]() {
      const auto v = ParseDouble(f[col]);
      if (!v) BadCsv(row->line, "bad number in column " + std::to_string(col));
      ++col;
      return *v;
    };
    for (double &x : r.moral_scores) x = number();
    for (double &x : r.zsc_features) x = number();
    for (double &x : r.liwc) x = number();
    for (int &y : r.weak_labels) {
      const auto v = ParseInt(f[col++]);
      if (!v || (*v != 1 && *v != -1)) BadCsv(row->line, "bad label");
      y = static_cast<int>(*v);
    }
    const auto count = ParseInt(f[col]);
    if (!count || *count < 0) BadCsv(row->line, "bad token count");
    r.token_count = static_cast<std::size_t>(*count);
    records.push_back(std::move(r));
  }
  return records;
}

nlohmann::json RecordToJson(const FeatureRecord &r) {
  nlohmann::json moral = nlohmann::json::object();
  nlohmann::json zsc = nlohmann::json::object();
  nlohmann::json labels = nlohmann::json::object();
  for (Dimension d : AllDimensions()) {
    const std::string name(d.DisplayName());
    moral[name] = r.moral_scores[d.index()];
    zsc[name] = r.zsc_features[d.index()];
    labels[name] = r.weak_labels[d.index()];
  }
  nlohmann::json liwc = nlohmann::json::object();
  for (std::size_t c = 0; c < lexicon::kNumCategories; ++c) {
    liwc[lexicon::SelectedCategories()[c]] = r.liwc[c];
  }
  return {{"doc_id", r.doc_id},   {"moral_scores", moral},
          {"zsc_features", zsc},  {"liwc", liwc},
          {"weak_labels", labels}, {"token_count", r.token_count}};
}

std::string RecordsToJsonl(std::span<const FeatureRecord> records) {
  std::string out;
  for (const FeatureRecord &r : records) {
    out += RecordToJson(r).dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace moralscope::features
