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

// moralscope: command-line driver for the pipeline stages.
//
// Exit codes: 0 success, 1 module error, 2 bad config or usage,
// 3 missing upstream artifact. Failures print one JSON object
// {"error", "module", "message"} on stderr.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moralscope/error.h"
#include "moralscope/lexicon.h"
#include "moralscope/pipeline.h"
#include "moralscope/synthetic.h"
#include "moralscope/util/strings.h"
#include "moralscope/zsc.h"

namespace {

using moralscope::Error;
using moralscope::ErrorCode;
namespace fs = std::filesystem;
namespace pipeline = moralscope::pipeline;

struct Overrides {
  std::string config;
  std::optional<std::string> output_dir;
  std::optional<std::size_t> workers;
  std::optional<std::string> backend;
  std::optional<std::string> endpoint;
  std::optional<std::size_t> top_k;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  std::optional<int> epochs;
  std::optional<std::size_t> folds;
  bool drop_stopwords = false;
  bool valence_weighted = false;
  std::optional<double> label_threshold;
};

void AddConfigOptions(CLI::App *cmd, Overrides &o) {
  cmd->add_option("-c,--config", o.config, "Run config (.toml or .json)")
      ->required();
  cmd->add_option("-o,--output-dir", o.output_dir, "Output directory");
  cmd->add_option("--workers", o.workers, "Worker threads for featurize");
  cmd->add_option("--zsc-backend", o.backend, "builtin or external");
  cmd->add_option("--zsc-endpoint", o.endpoint, "External scorer base URL");
  cmd->add_option("--top-k", o.top_k, "Label scores averaged per dimension");
  cmd->add_option("--seed", o.seed, "Training and fold seed");
  cmd->add_option("--lambda", o.lambda, "SVM regularization");
  cmd->add_option("--epochs", o.epochs, "SVM epochs");
  cmd->add_option("--folds", o.folds, "Cross-validation folds");
  cmd->add_option("--label-threshold", o.label_threshold,
                  "Weak label is +1 when the moral score exceeds this");
  cmd->add_flag("--drop-stopwords", o.drop_stopwords,
                "Remove stopwords during ingest");
  cmd->add_flag("--valence-weighted", o.valence_weighted,
                "Weight moral word counts by valence strength");
}

pipeline::RunConfig LoadConfig(const Overrides &o) {
  pipeline::RunConfig c = pipeline::RunConfig::Load(o.config);
  pipeline::ApplyEnvironment(c);
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.workers) c.workers = *o.workers;
  if (o.backend) c.zsc.backend = *o.backend;
  if (o.endpoint) c.zsc.endpoint.endpoint = *o.endpoint;
  if (o.top_k) c.features.top_k = *o.top_k;
  if (o.seed) c.train.seed = *o.seed;
  if (o.lambda) c.train.lambda = *o.lambda;
  if (o.epochs) c.train.epochs = *o.epochs;
  if (o.folds) c.train.folds = *o.folds;
  if (o.label_threshold) c.features.label_threshold = *o.label_threshold;
  if (o.drop_stopwords) c.drop_stopwords = true;
  if (o.valence_weighted) c.features.valence_weighted = true;
  c.Validate();
  return c;
}

std::vector<std::string> SelectCorpora(const pipeline::RunConfig &c,
                                       const std::vector<std::string> &names) {
  std::vector<std::string> out;
  if (names.empty()) {
    for (const auto &cc : c.corpora) out.push_back(cc.name);
  } else {
    for (const auto &n : names) out.push_back(c.Corpus(n).name);
  }
  return out;
}

void Log(const std::string &line) { std::cout << line << std::endl; }

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigInvalid: return 2;
    case ErrorCode::kMissingUpstreamArtifact: return 3;
    default: return 1;
  }
}

void ReportError(std::string_view error, std::string_view module,
                 std::string_view message) {
  nlohmann::json j = {{"error", error}, {"module", module},
                      {"message", message}};
  std::cerr << j.dump() << std::endl;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Moral foundations text analytics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "moralscope 1.0.0");

  Overrides o;
  std::vector<std::string> corpora;
  bool plain = false;

  auto *lexicon_cmd = app.add_subcommand(
      "lexicon", "Merge MFD and MoralStrength into merged_lexicon.csv");
  bool merge = false;
  std::string mfd_path, ms_path, merged_out;
  lexicon_cmd->add_flag("--merge", merge, "Merge the two lexicons (default)");
  lexicon_cmd->add_option("-c,--config", o.config, "Run config");
  lexicon_cmd->add_option("-o,--output-dir", o.output_dir, "Output directory");
  lexicon_cmd->add_option("--mfd", mfd_path, "MFD .dic (without --config)");
  lexicon_cmd->add_option("--moralstrength", ms_path,
                          "MoralStrength CSV (without --config)");
  lexicon_cmd->add_option("--out", merged_out,
                          "Merged CSV path (without --config)");

  struct Stage {
    const char *name;
    const char *help;
  };
  const Stage per_corpus[] = {
      {"ingest", "Parse, filter and normalize corpora"},
      {"featurize", "Compute feature records"},
      {"train", "Train one SVM per dimension"},
      {"evaluate", "Cross-validated F1 per dimension"},
      {"correlate", "Correlation matrix of emotion vs moral scores"},
  };
  std::map<std::string, CLI::App *> stage_cmds;
  for (const Stage &s : per_corpus) {
    auto *cmd = app.add_subcommand(s.name, s.help);
    AddConfigOptions(cmd, o);
    cmd->add_option("--corpus", corpora, "Corpus names (default: all)");
    stage_cmds[s.name] = cmd;
  }
  auto *report_cmd = app.add_subcommand("report", "Render report tables");
  AddConfigOptions(report_cmd, o);
  report_cmd->add_flag("--plain", plain, "Omit significance stars");
  auto *run_all = app.add_subcommand("run-all", "Every stage in order");
  AddConfigOptions(run_all, o);
  run_all->add_flag("--plain", plain, "Omit significance stars");

  auto *synth_cmd = app.add_subcommand(
      "synth", "Write a synthetic corpus and aligned embeddings");
  moralscope::synthetic::GeneratorConfig gen;
  std::string synth_mfd, synth_ms, synth_categories, corpus_out, emb_out;
  synth_cmd->add_option("--mfd", synth_mfd, "MFD .dic")->required();
  synth_cmd->add_option("--moralstrength", synth_ms, "MoralStrength CSV")
      ->required();
  synth_cmd->add_option("--categories", synth_categories,
                        "Emotion category .dic")->required();
  synth_cmd->add_option("--corpus-out", corpus_out, "JSONL output")
      ->required();
  synth_cmd->add_option("--embeddings-out", emb_out, "Embedding table output")
      ->required();
  synth_cmd->add_option("--documents", gen.documents, "Document count")
      ->capture_default_str();
  synth_cmd->add_option("--seed", gen.seed, "Generator seed")
      ->capture_default_str();
  synth_cmd->add_option("--decoys", gen.decoys,
                        "Extra documents that fail one filter each")
      ->capture_default_str();

  auto *probe_cmd = app.add_subcommand(
      "probe", "Check an external scorer against the wire contract");
  moralscope::zsc::EndpointConfig endpoint;
  std::string probe_text = "they protected the nurses";
  std::vector<std::string> probe_labels = {"care", "betrayal"};
  int timeout_ms = 10000;
  probe_cmd->add_option("--endpoint", endpoint.endpoint, "Base URL")
      ->capture_default_str();
  probe_cmd->add_option("--text", probe_text, "Text to score")
      ->capture_default_str();
  probe_cmd->add_option("--labels", probe_labels, "Labels to score");
  probe_cmd->add_option("--timeout-ms", timeout_ms, "Request timeout")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    ReportError("Usage", "cli", e.what());
    return 2;
  }

  try {
    if (lexicon_cmd->parsed()) {
      if (!o.config.empty()) {
        pipeline::RunConfig c = pipeline::RunConfig::Load(o.config);
        pipeline::ApplyEnvironment(c);
        if (o.output_dir) c.output_dir = *o.output_dir;
        pipeline::Pipeline p(std::move(c));
        const auto merged = p.StageLexicon();
        Log("lexicon: " + std::to_string(merged.size()) + " entries -> " +
            p.LexiconPath().string());
      } else {
        if (mfd_path.empty() || ms_path.empty() || merged_out.empty()) {
          throw Error("cli", ErrorCode::kConfigInvalid,
                      "lexicon needs --config or --mfd, --moralstrength and "
                      "--out");
        }
        const auto mfd = moralscope::lexicon::ParseMfd(
            moralscope::ReadFileOrThrow(mfd_path, "lexicon"));
        const auto ms = moralscope::lexicon::ParseMoralStrength(
            moralscope::ReadFileOrThrow(ms_path, "lexicon"));
        const auto merged = moralscope::lexicon::Merge(mfd, ms.lexicon);
        moralscope::WriteFileOrThrow(
            merged_out, moralscope::lexicon::WriteMergedCsv(merged), "cli");
        Log("lexicon: " + std::to_string(merged.size()) + " entries -> " +
            merged_out);
      }
      return 0;
    }

    for (const auto &[name, cmd] : stage_cmds) {
      if (!cmd->parsed()) continue;
      pipeline::Pipeline p(LoadConfig(o));
      for (const std::string &c : SelectCorpora(p.config(), corpora)) {
        if (name == "ingest") {
          const auto r = p.StageIngest(c);
          Log("ingest " + c + ": kept " + std::to_string(r.kept.size()) +
              ", filtered " + std::to_string(r.drops.total()));
        } else if (name == "featurize") {
          const auto r = p.StageFeaturize(c);
          Log("featurize " + c + ": " + std::to_string(r.size()) + " records");
        } else if (name == "train") {
          const auto models = p.StageTrain(c);
          std::size_t trained = 0;
          for (const auto &m : models) trained += m ? 1 : 0;
          Log("train " + c + ": " + std::to_string(trained) + " models");
        } else if (name == "evaluate") {
          p.StageEvaluate(c);
          Log("evaluate " + c + ": " + (p.CorpusDir(c) / "eval.json").string());
        } else if (name == "correlate") {
          const auto m = p.StageCorrelate(c);
          Log("correlate " + c + ": n = " + std::to_string(m.n));
        }
      }
      return 0;
    }

    if (report_cmd->parsed()) {
      pipeline::Pipeline p(LoadConfig(o));
      p.StageReport(plain);
      Log("report: " + p.ReportDir().string());
      return 0;
    }

    if (run_all->parsed()) {
      pipeline::Pipeline p(LoadConfig(o));
      p.RunAll(plain);
      Log("run-all: " + p.config().output_dir.string());
      return 0;
    }

    if (synth_cmd->parsed()) {
      namespace lex = moralscope::lexicon;
      const auto merged = lex::Merge(
          lex::ParseMfd(moralscope::ReadFileOrThrow(synth_mfd, "lexicon")),
          lex::ParseMoralStrength(
              moralscope::ReadFileOrThrow(synth_ms, "lexicon"))
              .lexicon);
      const auto dict = lex::ParseCategoryDictionary(
          moralscope::ReadFileOrThrow(synth_categories, "lexicon"));
      const auto out = moralscope::synthetic::Generate(merged, dict, gen);
      moralscope::WriteFileOrThrow(
          corpus_out, moralscope::synthetic::DocumentsToJsonl(out.documents),
          "cli");
      moralscope::WriteFileOrThrow(emb_out, out.embeddings.ToText(), "cli");
      Log("synth: " + std::to_string(out.documents.size()) + " documents, " +
          std::to_string(out.embeddings.size()) + " vectors");
      return 0;
    }

    if (probe_cmd->parsed()) {
      endpoint.timeout = std::chrono::milliseconds(timeout_ms);
      moralscope::zsc::ExternalScorer scorer(endpoint);
      const bool healthy = scorer.Healthy();
      moralscope::zsc::LabelSet set;
      set.labels = probe_labels;
      const auto scores = scorer.ScoreLabels(probe_text, set);
      nlohmann::json j = {{"endpoint", endpoint.endpoint},
                          {"healthy", healthy},
                          {"labels", probe_labels},
                          {"scores", scores.scores},
                          {"contract", "ok"}};
      std::cout << j.dump() << std::endl;
      return 0;
    }
  } catch (const Error &e) {
    ReportError(moralscope::ErrorCodeName(e.code()), e.module(), e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    ReportError("Internal", "cli", e.what());
    return 1;
  }
  return 0;
}
