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

// Run configuration and the file-backed stages behind the CLI.
//
// Output tree under output_dir:
//
//   lexicon/merged_lexicon.csv, lexicon/lexicon_report.json
//   corpora/<name>/docs.jsonl, ingest_report.json
//   corpora/<name>/features.csv, features.jsonl, featurize_report.json
//   corpora/<name>/eval.json, correlations.json
//   models/<name>/<DimensionKey>.json
//   report/correlations_<name>.{md,csv,json}, report/f1.{md,csv,json}
//   report/run_meta.json
//
// Each stage reads only files written by earlier stages and fails with
// kMissingUpstreamArtifact when one is absent. Nothing depends on the wall
// clock, so reruns with the same config produce identical bytes.

#ifndef MORALSCOPE_PIPELINE_H_
#define MORALSCOPE_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralscope/corpus.h"
#include "moralscope/features.h"
#include "moralscope/learn.h"
#include "moralscope/lexicon.h"
#include "moralscope/report.h"
#include "moralscope/stats.h"
#include "moralscope/zsc.h"

namespace moralscope::pipeline {

struct CorpusConfig {
  std::string name;
  std::filesystem::path path;
  corpus::Format format = corpus::Format::kJsonl;
  corpus::FilterSpec filter;
};

struct ZscConfig {
  std::string backend = "builtin";  // "builtin" or "external"
  std::filesystem::path embeddings;  // builtin only
  zsc::EndpointConfig endpoint;      // external only
  std::size_t max_labels = 0;        // 0 keeps every lexicon surface
};

struct RunConfig {
  std::filesystem::path mfd;
  std::filesystem::path moralstrength;
  std::filesystem::path categories;
  std::optional<std::filesystem::path> stopwords;
  bool drop_stopwords = false;
  std::vector<CorpusConfig> corpora;
  ZscConfig zsc;
  features::FeatureOptions features;
  learn::TrainConfig train;
  std::size_t workers = 4;
  std::filesystem::path output_dir = "out";

  // Relative paths resolve against base_dir. Throws kConfigInvalid.
  static RunConfig FromJson(const nlohmann::json &j,
                            const std::filesystem::path &base_dir);
  // .toml or .json, chosen by extension; relative paths resolve against the
  // file's directory.
  static RunConfig Load(const std::filesystem::path &path);

  // Checks ranges and that every referenced input file exists.
  void Validate() const;
  const CorpusConfig &Corpus(std::string_view name) const;

  // Canonical JSON (paths as given after resolution) and its FNV-1a hash.
  nlohmann::json ToJson() const;
  std::string Hash() const;
};

// Applies MORALSCOPE_* environment overrides: OUTPUT_DIR, WORKERS,
// ZSC_BACKEND, ZSC_ENDPOINT, ZSC_TIMEOUT_MS, ZSC_RETRIES, SEED, LAMBDA,
// EPOCHS, FOLDS. Throws kConfigInvalid on unparsable values.
void ApplyEnvironment(RunConfig &config);

class Pipeline {
 public:
  explicit Pipeline(RunConfig config);

  const RunConfig &config() const { return config_; }

  std::filesystem::path LexiconPath() const;
  std::filesystem::path CorpusDir(std::string_view name) const;
  std::filesystem::path ModelDir(std::string_view name) const;
  std::filesystem::path ReportDir() const;

  lexicon::MergedLexicon StageLexicon() const;
  corpus::FilterResult StageIngest(std::string_view corpus) const;
  std::vector<features::FeatureRecord> StageFeaturize(
      std::string_view corpus) const;
  PerDimension<std::optional<learn::LinearModel>> StageTrain(
      std::string_view corpus) const;
  learn::EvalReport StageEvaluate(std::string_view corpus) const;
  stats::CorrelationMatrix StageCorrelate(std::string_view corpus) const;
  // plain drops the significance stars.
  void StageReport(bool plain = false) const;

  // Every stage for every corpus, in order.
  void RunAll(bool plain = false) const;

  // Upstream readers.
  lexicon::MergedLexicon LoadLexicon() const;
  std::vector<corpus::Document> LoadDocuments(std::string_view corpus) const;
  std::vector<features::FeatureRecord> LoadFeatures(
      std::string_view corpus) const;

 private:
  std::unique_ptr<zsc::Scorer> MakeScorer(
      std::optional<zsc::EmbeddingTable> &storage) const;

  RunConfig config_;
};

}  // namespace moralscope::pipeline

#endif  // MORALSCOPE_PIPELINE_H_
