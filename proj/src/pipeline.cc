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

#include "moralscope/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "moralscope/error.h"
#include "moralscope/util/strings.h"
#include "toml.hpp"

namespace moralscope::pipeline {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kModule = "cli";

[[noreturn]] void Invalid(const std::string &msg) {
  throw Error(kModule, ErrorCode::kConfigInvalid, msg);
}

void CheckKeys(const nlohmann::json &j, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) Invalid(std::string(where) + " must be a table");
  for (const auto &[key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Invalid("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T Get(const nlohmann::json &j, std::string_view key, T fallback) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception &) {
    Invalid("bad value for '" + std::string(key) + "'");
  }
}

fs::path Resolve(const fs::path &base, const std::string &p) {
  const fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::optional<corpus::Timestamp> Bound(const nlohmann::json &j,
                                       std::string_view key, bool end) {
  const auto s = Get<std::string>(j, key, "");
  if (s.empty()) return std::nullopt;
  const auto t = corpus::ParseDateBound(s, end);
  if (!t) Invalid("bad date '" + s + "' for " + std::string(key));
  return t;
}

std::set<std::string> StringSet(const nlohmann::json &j, std::string_view key) {
  const auto v = Get<std::vector<std::string>>(j, key, {});
  return {v.begin(), v.end()};
}

nlohmann::json ReadJsonFile(const fs::path &path) {
  if (!fs::exists(path)) {
    throw Error(kModule, ErrorCode::kMissingUpstreamArtifact,
                "missing " + path.string() + "; run the earlier stage first");
  }
  try {
    return nlohmann::json::parse(ReadFileOrThrow(path, kModule));
  } catch (const nlohmann::json::exception &e) {
    throw Error(kModule, ErrorCode::kMissingUpstreamArtifact,
                "unreadable " + path.string() + ": " + e.what());
  }
}

std::string ReadUpstream(const fs::path &path) {
  if (!fs::exists(path)) {
    throw Error(kModule, ErrorCode::kMissingUpstreamArtifact,
                "missing " + path.string() + "; run the earlier stage first");
  }
  return ReadFileOrThrow(path, kModule);
}

void WriteJson(const fs::path &path, const nlohmann::json &j) {
  WriteFileOrThrow(path, j.dump(2) + "\n", kModule);
}

std::optional<std::string> Env(const char *name) {
  const char *v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

std::int64_t EnvInt(const std::string &name, const std::string &value) {
  const auto n = ParseInt(value);
  if (!n || *n < 0) Invalid(name + " must be a non-negative integer");
  return *n;
}

}  // namespace

RunConfig RunConfig::FromJson(const nlohmann::json &j, const fs::path &base) {
  CheckKeys(j, "config",
            {"output_dir", "workers", "lexicon", "preprocess", "zsc",
             "features", "train", "corpus"});
  RunConfig c;
  c.output_dir = Resolve(base, Get<std::string>(j, "output_dir", "out"));
  const auto workers = Get<std::int64_t>(j, "workers", 4);
  if (workers < 1) Invalid("workers must be at least 1");
  c.workers = static_cast<std::size_t>(workers);

  const nlohmann::json lex = j.value("lexicon", nlohmann::json::object());
  CheckKeys(lex, "lexicon", {"mfd", "moralstrength", "categories"});
  for (const char *key : {"mfd", "moralstrength", "categories"}) {
    if (!lex.contains(key)) Invalid(std::string("lexicon.") + key + " is required");
  }
  c.mfd = Resolve(base, Get<std::string>(lex, "mfd", ""));
  c.moralstrength = Resolve(base, Get<std::string>(lex, "moralstrength", ""));
  c.categories = Resolve(base, Get<std::string>(lex, "categories", ""));

  const nlohmann::json pre = j.value("preprocess", nlohmann::json::object());
  CheckKeys(pre, "preprocess", {"stopwords", "drop_stopwords"});
  if (pre.contains("stopwords")) {
    c.stopwords = Resolve(base, Get<std::string>(pre, "stopwords", ""));
  }
  c.drop_stopwords = Get<bool>(pre, "drop_stopwords", false);

  const nlohmann::json z = j.value("zsc", nlohmann::json::object());
  CheckKeys(z, "zsc",
            {"backend", "embeddings", "endpoint", "timeout_ms", "retries",
             "backoff_ms", "max_in_flight", "top_k", "max_labels"});
  c.zsc.backend = Get<std::string>(z, "backend", "builtin");
  if (z.contains("embeddings")) {
    c.zsc.embeddings = Resolve(base, Get<std::string>(z, "embeddings", ""));
  }
  c.zsc.endpoint.endpoint = Get<std::string>(z, "endpoint", c.zsc.endpoint.endpoint);
  c.zsc.endpoint.timeout = std::chrono::milliseconds(
      Get<std::int64_t>(z, "timeout_ms", c.zsc.endpoint.timeout.count()));
  c.zsc.endpoint.retries = Get<int>(z, "retries", c.zsc.endpoint.retries);
  c.zsc.endpoint.backoff = std::chrono::milliseconds(
      Get<std::int64_t>(z, "backoff_ms", c.zsc.endpoint.backoff.count()));
  c.zsc.endpoint.max_in_flight =
      Get<std::size_t>(z, "max_in_flight", c.zsc.endpoint.max_in_flight);
  c.features.top_k = Get<std::size_t>(z, "top_k", c.features.top_k);
  c.zsc.max_labels = Get<std::size_t>(z, "max_labels", 0);

  const nlohmann::json f = j.value("features", nlohmann::json::object());
  CheckKeys(f, "features", {"valence_weighted", "label_threshold"});
  c.features.valence_weighted = Get<bool>(f, "valence_weighted", false);
  c.features.label_threshold = Get<double>(f, "label_threshold", 0.0);

  const nlohmann::json t = j.value("train", nlohmann::json::object());
  CheckKeys(t, "train", {"lambda", "epochs", "seed", "folds"});
  c.train.lambda = Get<double>(t, "lambda", c.train.lambda);
  c.train.epochs = Get<int>(t, "epochs", c.train.epochs);
  c.train.seed = Get<std::uint64_t>(t, "seed", c.train.seed);
  c.train.folds = Get<std::size_t>(t, "folds", c.train.folds);

  const nlohmann::json corpora = j.value("corpus", nlohmann::json::array());
  if (!corpora.is_array()) Invalid("corpus must be an array of tables");
  for (const auto &cj : corpora) {
    CheckKeys(cj, "corpus",
              {"name", "path", "format", "countries", "langs", "keywords",
               "start", "end"});
    CorpusConfig cc;
    cc.name = Get<std::string>(cj, "name", "");
    const auto path = Get<std::string>(cj, "path", "");
    if (path.empty()) Invalid("corpus.path is required");
    cc.path = Resolve(base, path);
    try {
      cc.format = cj.contains("format")
                      ? corpus::ParseFormat(Get<std::string>(cj, "format", ""))
                      : corpus::FormatFromPath(cc.path);
    } catch (const Error &e) {
      Invalid(e.what());
    }
    cc.filter.countries = StringSet(cj, "countries");
    cc.filter.langs = StringSet(cj, "langs");
    cc.filter.keywords = StringSet(cj, "keywords");
    cc.filter.start = Bound(cj, "start", false);
    cc.filter.end = Bound(cj, "end", true);
    c.corpora.push_back(std::move(cc));
  }
  c.Validate();
  return c;
}

RunConfig RunConfig::Load(const fs::path &path) {
  const std::string text = ReadFileOrThrow(path, kModule);
  const fs::path base = path.has_parent_path() ? path.parent_path() : ".";
  const std::string ext = AsciiLower(path.extension().string());
  nlohmann::json j;
  try {
    if (ext == ".toml") {
      const toml::table table = toml::parse(text, path.string());
      std::ostringstream out;
      out << toml::json_formatter{table};
      j = nlohmann::json::parse(out.str());
    } else if (ext == ".json") {
      j = nlohmann::json::parse(text);
    } else {
      Invalid("config must be .toml or .json: " + path.string());
    }
  } catch (const toml::parse_error &e) {
    std::ostringstream msg;
    msg << path.string() << ":" << e.source().begin.line << ": "
        << e.description();
    Invalid(msg.str());
  } catch (const nlohmann::json::exception &e) {
    Invalid(path.string() + ": " + e.what());
  }
  return FromJson(j, base);
}

void RunConfig::Validate() const {
  if (zsc.backend != "builtin" && zsc.backend != "external") {
    Invalid("zsc.backend must be builtin or external");
  }
  if (zsc.backend == "builtin" && zsc.embeddings.empty()) {
    Invalid("zsc.embeddings is required for the builtin backend");
  }
  if (zsc.endpoint.timeout.count() <= 0 || zsc.endpoint.retries < 0 ||
      zsc.endpoint.backoff.count() < 0 || zsc.endpoint.max_in_flight == 0) {
    Invalid("zsc endpoint settings out of range");
  }
  if (features.top_k == 0) Invalid("zsc.top_k must be positive");
  if (!(features.label_threshold >= 0.0)) {
    Invalid("features.label_threshold must be >= 0");
  }
  try {
    train.Validate();
  } catch (const Error &e) {
    Invalid(e.what());
  }
  if (workers == 0) Invalid("workers must be at least 1");
  auto require_file = [](const fs::path &path, std::string_view what) {
    if (!fs::is_regular_file(path)) {
      Invalid(std::string(what) + " not found: " + path.string());
    }
  };
  require_file(mfd, "lexicon.mfd");
  require_file(moralstrength, "lexicon.moralstrength");
  require_file(categories, "lexicon.categories");
  if (stopwords) require_file(*stopwords, "preprocess.stopwords");
  if (zsc.backend == "builtin") require_file(zsc.embeddings, "zsc.embeddings");
  if (corpora.empty()) Invalid("at least one [[corpus]] is required");
  std::set<std::string> names;
  for (const auto &c : corpora) {
    if (c.name.empty() ||
        c.name.find_first_of("/\\ \t") != std::string::npos) {
      Invalid("corpus name '" + c.name + "' must be a non-empty word");
    }
    if (!names.insert(c.name).second) Invalid("duplicate corpus " + c.name);
    require_file(c.path, "corpus " + c.name);
    try {
      c.filter.Validate();
    } catch (const Error &e) {
      Invalid(e.what());
    }
  }
}

const CorpusConfig &RunConfig::Corpus(std::string_view name) const {
  for (const auto &c : corpora) {
    if (c.name == name) return c;
  }
  Invalid("no corpus named '" + std::string(name) + "'");
}

nlohmann::json RunConfig::ToJson() const {
  nlohmann::json corpora_json = nlohmann::json::array();
  for (const auto &c : corpora) {
    nlohmann::json cj = {{"name", c.name},
                         {"path", c.path.generic_string()},
                         {"format", c.format == corpus::Format::kCsv ? "csv" : "jsonl"},
                         {"countries", c.filter.countries},
                         {"langs", c.filter.langs},
                         {"keywords", c.filter.keywords}};
    if (c.filter.start) cj["start"] = corpus::FormatRfc3339(*c.filter.start);
    if (c.filter.end) cj["end"] = corpus::FormatRfc3339(*c.filter.end);
    corpora_json.push_back(std::move(cj));
  }
  nlohmann::json j = {
      {"output_dir", output_dir.generic_string()},
      {"workers", workers},
      {"lexicon",
       {{"mfd", mfd.generic_string()},
        {"moralstrength", moralstrength.generic_string()},
        {"categories", categories.generic_string()}}},
      {"preprocess", {{"drop_stopwords", drop_stopwords}}},
      {"zsc",
       {{"backend", zsc.backend},
        {"embeddings", zsc.embeddings.generic_string()},
        {"endpoint", zsc.endpoint.endpoint},
        {"timeout_ms", zsc.endpoint.timeout.count()},
        {"retries", zsc.endpoint.retries},
        {"backoff_ms", zsc.endpoint.backoff.count()},
        {"max_in_flight", zsc.endpoint.max_in_flight},
        {"top_k", features.top_k},
        {"max_labels", zsc.max_labels}}},
      {"features",
       {{"valence_weighted", features.valence_weighted},
        {"label_threshold", features.label_threshold}}},
      {"train",
       {{"lambda", train.lambda},
        {"epochs", train.epochs},
        {"seed", train.seed},
        {"folds", train.folds}}},
      {"corpus", corpora_json}};
  if (stopwords) j["preprocess"]["stopwords"] = stopwords->generic_string();
  return j;
}

std::string RunConfig::Hash() const {
  // Output location and parallelism do not change results.
  nlohmann::json j = ToJson();
  j.erase("output_dir");
  j.erase("workers");
  return Fnv1aHex(j.dump());
}

void ApplyEnvironment(RunConfig &config) {
  if (auto v = Env("MORALSCOPE_OUTPUT_DIR")) config.output_dir = *v;
  if (auto v = Env("MORALSCOPE_WORKERS")) {
    config.workers = static_cast<std::size_t>(EnvInt("MORALSCOPE_WORKERS", *v));
  }
  if (auto v = Env("MORALSCOPE_ZSC_BACKEND")) config.zsc.backend = *v;
  if (auto v = Env("MORALSCOPE_ZSC_ENDPOINT")) config.zsc.endpoint.endpoint = *v;
  if (auto v = Env("MORALSCOPE_ZSC_TIMEOUT_MS")) {
    config.zsc.endpoint.timeout =
        std::chrono::milliseconds(EnvInt("MORALSCOPE_ZSC_TIMEOUT_MS", *v));
  }
  if (auto v = Env("MORALSCOPE_ZSC_RETRIES")) {
    config.zsc.endpoint.retries =
        static_cast<int>(EnvInt("MORALSCOPE_ZSC_RETRIES", *v));
  }
  if (auto v = Env("MORALSCOPE_SEED")) {
    config.train.seed = static_cast<std::uint64_t>(EnvInt("MORALSCOPE_SEED", *v));
  }
  if (auto v = Env("MORALSCOPE_EPOCHS")) {
    config.train.epochs = static_cast<int>(EnvInt("MORALSCOPE_EPOCHS", *v));
  }
  if (auto v = Env("MORALSCOPE_FOLDS")) {
    config.train.folds = static_cast<std::size_t>(EnvInt("MORALSCOPE_FOLDS", *v));
  }
  if (auto v = Env("MORALSCOPE_LAMBDA")) {
    const auto d = ParseDouble(*v);
    if (!d) Invalid("MORALSCOPE_LAMBDA must be a number");
    config.train.lambda = *d;
  }
  config.Validate();
}

Pipeline::Pipeline(RunConfig config) : config_(std::move(config)) {}

fs::path Pipeline::LexiconPath() const {
  return config_.output_dir / "lexicon" / "merged_lexicon.csv";
}

fs::path Pipeline::CorpusDir(std::string_view name) const {
  return config_.output_dir / "corpora" / std::string(name);
}

fs::path Pipeline::ModelDir(std::string_view name) const {
  return config_.output_dir / "models" / std::string(name);
}

fs::path Pipeline::ReportDir() const { return config_.output_dir / "report"; }

lexicon::MergedLexicon Pipeline::StageLexicon() const {
  const auto mfd = lexicon::ParseMfd(ReadFileOrThrow(config_.mfd, "lexicon"));
  const auto ms = lexicon::ParseMoralStrength(
      ReadFileOrThrow(config_.moralstrength, "lexicon"));
  lexicon::MergedLexicon merged = lexicon::Merge(mfd, ms.lexicon);
  WriteFileOrThrow(LexiconPath(), lexicon::WriteMergedCsv(merged), kModule);

  std::size_t both = 0;
  nlohmann::json per_dim = nlohmann::json::object();
  for (Dimension d : AllDimensions()) {
    per_dim[std::string(d.Key())] = merged.entries(d).size();
    for (const auto &[key, e] : merged.entries(d)) {
      if (e.source == lexicon::Source::kBoth) ++both;
    }
  }
  WriteJson(LexiconPath().parent_path() / "lexicon_report.json",
            {{"mfd_entries", mfd.size()},
             {"moralstrength_entries", ms.lexicon.size()},
             {"moralstrength_dropped_neutral", ms.dropped_neutral},
             {"merged_entries", merged.size()},
             {"shared_entries", both},
             {"per_dimension", per_dim}});
  return merged;
}

corpus::FilterResult Pipeline::StageIngest(std::string_view name) const {
  const CorpusConfig &cc = config_.Corpus(name);
  corpus::StopwordSet stopwords;
  if (config_.stopwords) {
    stopwords = corpus::ParseStopwords(
        ReadFileOrThrow(*config_.stopwords, "corpus"));
  }
  corpus::IngestResult ingested = corpus::Ingest(cc.path, cc.format);
  corpus::FilterResult filtered =
      corpus::ApplyFilters(std::move(ingested.documents), cc.filter);
  std::string jsonl;
  for (auto &doc : filtered.kept) {
    doc.tokens = corpus::Normalize(doc.text, config_.drop_stopwords, stopwords);
    jsonl += corpus::DocumentToJson(doc).dump() + "\n";
  }
  const fs::path dir = CorpusDir(name);
  WriteFileOrThrow(dir / "docs.jsonl", jsonl, kModule);
  WriteJson(dir / "ingest_report.json",
            {{"corpus", cc.name},
             {"ingest", ingested.report.ToJson()},
             {"filtered", filtered.drops.ToJson()},
             {"kept", filtered.kept.size()}});
  return filtered;
}

lexicon::MergedLexicon Pipeline::LoadLexicon() const {
  return lexicon::ReadMergedCsv(ReadUpstream(LexiconPath()));
}

std::vector<corpus::Document> Pipeline::LoadDocuments(
    std::string_view name) const {
  const std::string text = ReadUpstream(CorpusDir(name) / "docs.jsonl");
  std::vector<corpus::Document> docs;
  for (std::string_view line : SplitLines(text)) {
    if (Trim(line).empty()) continue;
    try {
      docs.push_back(corpus::DocumentFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception &e) {
      throw Error(kModule, ErrorCode::kMissingUpstreamArtifact,
                  "corrupt docs.jsonl for " + std::string(name) + ": " +
                      e.what());
    }
  }
  return docs;
}

std::vector<features::FeatureRecord> Pipeline::LoadFeatures(
    std::string_view name) const {
  return features::RecordsFromCsv(
      ReadUpstream(CorpusDir(name) / "features.csv"));
}

std::unique_ptr<zsc::Scorer> Pipeline::MakeScorer(
    std::optional<zsc::EmbeddingTable> &storage) const {
  if (config_.zsc.backend == "external") {
    return std::make_unique<zsc::ExternalScorer>(config_.zsc.endpoint);
  }
  storage = zsc::EmbeddingTable::Load(config_.zsc.embeddings);
  return std::make_unique<zsc::BuiltinScorer>(*storage);
}

std::vector<features::FeatureRecord> Pipeline::StageFeaturize(
    std::string_view name) const {
  config_.Corpus(name);
  const lexicon::MergedLexicon lexicon = LoadLexicon();
  const std::vector<corpus::Document> docs = LoadDocuments(name);
  const lexicon::CategoryDictionary dict = lexicon::ParseCategoryDictionary(
      ReadFileOrThrow(config_.categories, "lexicon"));
  const PerDimension<zsc::LabelSet> label_sets =
      zsc::BuildLabelSets(lexicon, config_.zsc.max_labels);
  std::optional<zsc::EmbeddingTable> table;
  const std::unique_ptr<zsc::Scorer> scorer = MakeScorer(table);

  std::vector<features::BuildResult> results(docs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= docs.size()) return;
      try {
        results[i] = features::BuildRecord(docs[i].id, docs[i].text,
                                           docs[i].tokens, lexicon, dict,
                                           *scorer, label_sets,
                                           config_.features);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(docs.size());
        return;
      }
    }
  };
  {
    const std::size_t n = std::max<std::size_t>(
        1, std::min(config_.workers, docs.size()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(results.begin(), results.end(),
            [](const auto &a, const auto &b) {
              return a.record.doc_id < b.record.doc_id;
            });
  std::vector<features::FeatureRecord> records;
  std::vector<std::string> uncovered;
  records.reserve(results.size());
  for (auto &r : results) {
    if (!r.zsc_covered) uncovered.push_back(r.record.doc_id);
    records.push_back(std::move(r.record));
  }

  const fs::path dir = CorpusDir(name);
  WriteFileOrThrow(dir / "features.csv", features::RecordsToCsv(records),
                   kModule);
  WriteFileOrThrow(dir / "features.jsonl", features::RecordsToJsonl(records),
                   kModule);
  WriteJson(dir / "featurize_report.json",
            {{"documents", records.size()},
             {"feature_layout_version", features::kFeatureLayoutVersion},
             {"zsc_backend", config_.zsc.backend},
             {"uncovered", uncovered.size()},
             {"uncovered_ids", uncovered}});
  return records;
}

PerDimension<std::optional<learn::LinearModel>> Pipeline::StageTrain(
    std::string_view name) const {
  config_.Corpus(name);
  const auto records = LoadFeatures(name);
  auto models = learn::TrainAll(records, config_.train);
  const fs::path dir = ModelDir(name);
  nlohmann::json index = nlohmann::json::object();
  for (Dimension d : AllDimensions()) {
    const std::string key(d.Key());
    const fs::path file = dir / (key + ".json");
    if (const auto &model = models[d.index()]) {
      WriteJson(file, model->ToJson());
      index[key] = key + ".json";
    } else {
      std::error_code ec;
      fs::remove(file, ec);
      index[key] = nullptr;
    }
  }
  WriteJson(dir / "index.json",
            {{"samples", records.size()},
             {"train_config_hash", config_.train.Hash()},
             {"models", index}});
  return models;
}

learn::EvalReport Pipeline::StageEvaluate(std::string_view name) const {
  config_.Corpus(name);
  const auto records = LoadFeatures(name);
  learn::EvalReport report = learn::CrossValidate(records, config_.train);
  WriteJson(CorpusDir(name) / "eval.json", report.ToJson());
  return report;
}

stats::CorrelationMatrix Pipeline::StageCorrelate(std::string_view name) const {
  config_.Corpus(name);
  const auto records = LoadFeatures(name);
  stats::CorrelationMatrix matrix = stats::ComputeCorrelationMatrix(records);
  WriteJson(CorpusDir(name) / "correlations.json", matrix.ToJson());
  return matrix;
}

void Pipeline::StageReport(bool plain) const {
  constexpr report::Format kFormats[] = {
      report::Format::kMarkdown, report::Format::kCsv, report::Format::kJson};
  const fs::path dir = ReportDir();
  std::vector<report::NamedEval> evals;
  nlohmann::json corpora = nlohmann::json::array();
  std::optional<corpus::Timestamp> latest;

  for (const auto &cc : config_.corpora) {
    const fs::path cdir = CorpusDir(cc.name);
    const auto matrix =
        stats::CorrelationMatrix::FromJson(ReadJsonFile(cdir / "correlations.json"));
    for (report::Format f : kFormats) {
      WriteFileOrThrow(dir / ("correlations_" + cc.name + "." +
                              std::string(report::FileExtension(f))),
                       report::RenderCorrelation(matrix, f, plain), kModule);
    }
    evals.push_back({cc.name, learn::EvalReport::FromJson(
                                  ReadJsonFile(cdir / "eval.json"))});

    const auto docs = LoadDocuments(cc.name);
    nlohmann::json cj = {{"name", cc.name}, {"documents", docs.size()}};
    if (!docs.empty()) {
      const auto [lo, hi] = std::minmax_element(
          docs.begin(), docs.end(), [](const auto &a, const auto &b) {
            return a.created_at < b.created_at;
          });
      cj["first_created_at"] = corpus::FormatRfc3339(lo->created_at);
      cj["last_created_at"] = corpus::FormatRfc3339(hi->created_at);
      if (!latest || hi->created_at > *latest) latest = hi->created_at;
    }
    corpora.push_back(std::move(cj));
  }
  for (report::Format f : kFormats) {
    WriteFileOrThrow(dir / ("f1." + std::string(report::FileExtension(f))),
                     report::RenderF1(evals, f), kModule);
  }

  nlohmann::json meta = {
      {"config_hash", config_.Hash()},
      {"train_config_hash", config_.train.Hash()},
      {"feature_layout_version", features::kFeatureLayoutVersion},
      {"zsc_backend", config_.zsc.backend},
      {"corpora", corpora},
      {"data_through", latest ? nlohmann::json(corpus::FormatRfc3339(*latest))
                              : nlohmann::json(nullptr)}};
  WriteJson(dir / "run_meta.json", meta);
}

void Pipeline::RunAll(bool plain) const {
  StageLexicon();
  for (const auto &cc : config_.corpora) {
    StageIngest(cc.name);
    StageFeaturize(cc.name);
    StageTrain(cc.name);
    StageEvaluate(cc.name);
    StageCorrelate(cc.name);
  }
  StageReport(plain);
}

}  // namespace moralscope::pipeline
