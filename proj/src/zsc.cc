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

#include "moralscope/zsc.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "moralscope/error.h"
#include "moralscope/util/strings.h"

namespace moralscope::zsc {
namespace {

constexpr std::string_view kModule = "zsc";

[[noreturn]] void Fail(ErrorCode code, const std::string &message) {
  throw Error(kModule, code, message);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

// Mean of in-vocabulary token vectors. Tokens are aggregated in sorted
// order so the result does not depend on token order, bit for bit.
std::vector<double> DocumentVector(std::span<const std::string> tokens,
                                   const EmbeddingTable &embeddings) {
  std::map<std::string_view, std::size_t> counts;
  for (const std::string &t : tokens) ++counts[t];
  std::vector<double> sum(embeddings.dim(), 0.0);
  std::size_t covered = 0;
  for (const auto &[token, count] : counts) {
    const std::vector<double> *v = embeddings.Find(token);
    if (v == nullptr) continue;
    covered += count;
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += static_cast<double>(count) * (*v)[i];
    }
  }
  if (covered == 0) {
    Fail(ErrorCode::kNoTokenCoverage, "no token is in the embedding table");
  }
  for (double &x : sum) x /= static_cast<double>(covered);
  if (Norm(sum) == 0.0) Fail(ErrorCode::kZeroVector, "document vector is zero");
  return sum;
}

LabelScores ScoreAgainst(std::span<const double> doc, double doc_norm,
                         const LabelSet &labels,
                         const EmbeddingTable &embeddings) {
  LabelScores out{labels.dimension, {}};
  out.scores.reserve(labels.labels.size());
  for (const std::string &label : labels.labels) {
    const std::vector<double> *v = embeddings.Find(label);
    if (v == nullptr) {
      out.scores.push_back(0.5);
      continue;
    }
    const double label_norm = Norm(*v);
    if (label_norm == 0.0) {
      Fail(ErrorCode::kZeroVector, "label '" + label + "' has a zero vector");
    }
    const double cosine = Dot(doc, *v) / (doc_norm * label_norm);
    out.scores.push_back(std::clamp((cosine + 1.0) / 2.0, 0.0, 1.0));
  }
  return out;
}

std::string EndpointHost(const std::string &endpoint) {
  std::string host = endpoint;
  while (!host.empty() && host.back() == '/') host.pop_back();
  return host;
}

}  // namespace

PerDimension<LabelSet> BuildLabelSets(const lexicon::MergedLexicon &lexicon,
                                      std::size_t max_labels) {
  PerDimension<LabelSet> sets;
  for (Dimension d : AllDimensions()) {
    std::set<std::string> unique;
    for (const auto &[key, entry] : lexicon.entries(d)) {
      unique.insert(entry.surface);
    }
    if (unique.empty()) {
      Fail(ErrorCode::kEmptyLabelSet,
           "dimension " + std::string(d.DisplayName()) + " has no labels");
    }
    LabelSet &set = sets[d.index()];
    set.dimension = d;
    set.labels.assign(unique.begin(), unique.end());
    if (max_labels > 0 && set.labels.size() > max_labels) {
      set.labels.resize(max_labels);
    }
  }
  return sets;
}

// ---------------------------------------------------------------------------
// EmbeddingTable

EmbeddingTable EmbeddingTable::Parse(std::string_view text) {
  EmbeddingTable table;
  const auto lines = SplitLines(text);
  std::size_t first = 0;
  while (first < lines.size() && Trim(lines[first]).empty()) ++first;
  if (first < lines.size()) {
    const auto fields = SplitWhitespace(lines[first]);
    if (fields.size() == 2 && ParseInt(fields[0]) && ParseInt(fields[1])) {
      const auto d = *ParseInt(fields[1]);
      if (d <= 0) Fail(ErrorCode::kMalformedEmbedding, "bad header dimension");
      table.dim_ = static_cast<std::size_t>(d);
      ++first;
    }
  }
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto fields = SplitWhitespace(lines[i]);
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      Fail(ErrorCode::kMalformedEmbedding,
           "line " + std::to_string(i + 1) + ": word without a vector");
    }
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto x = ParseDouble(fields[f]);
      if (!x) {
        Fail(ErrorCode::kMalformedEmbedding,
             "line " + std::to_string(i + 1) + ": bad component");
      }
      vec.push_back(*x);
    }
    table.Add(std::string(fields[0]), std::move(vec));
  }
  if (table.vectors_.empty()) {
    Fail(ErrorCode::kMalformedEmbedding, "embedding table is empty");
  }
  return table;
}

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path &path) {
  return Parse(ReadFileOrThrow(path, kModule));
}

void EmbeddingTable::Add(std::string word, std::vector<double> vector) {
  if (dim_ == 0) dim_ = vector.size();
  if (vector.size() != dim_ || dim_ == 0) {
    Fail(ErrorCode::kMalformedEmbedding,
         "vector for '" + word + "' has length " +
             std::to_string(vector.size()) + ", expected " +
             std::to_string(dim_));
  }
  vectors_[std::move(word)] = std::move(vector);
}

const std::vector<double> *EmbeddingTable::Find(std::string_view word) const {
  const auto it = vectors_.find(std::string(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

std::string EmbeddingTable::ToText() const {
  std::map<std::string_view, const std::vector<double> *> sorted;
  for (const auto &[word, vec] : vectors_) sorted.emplace(word, &vec);
  std::string out = std::to_string(vectors_.size()) + " " +
                    std::to_string(dim_) + "\n";
  for (const auto &[word, vec] : sorted) {
    out += word;
    for (double x : *vec) out += " " + FormatDouble(x);
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scoring

void ValidateScores(std::size_t label_count, std::span<const double> scores) {
  if (scores.size() != label_count) {
    Fail(ErrorCode::kProtocolViolation,
         "expected " + std::to_string(label_count) + " scores, got " +
             std::to_string(scores.size()));
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i]) || scores[i] < 0.0 || scores[i] > 1.0) {
      Fail(ErrorCode::kProtocolViolation,
           "score " + std::to_string(i) + " = " + FormatDouble(scores[i]) +
               " is outside [0, 1]");
    }
  }
}

LabelScores ScoreLabelsBuiltin(std::span<const std::string> tokens,
                               const LabelSet &labels,
                               const EmbeddingTable &embeddings) {
  const std::vector<double> doc = DocumentVector(tokens, embeddings);
  LabelScores out = ScoreAgainst(doc, Norm(doc), labels, embeddings);
  ValidateScores(labels.labels.size(), out.scores);
  return out;
}

PerDimension<double> DimensionFeatures(std::span<const LabelScores> scores,
                                       std::size_t k) {
  if (k == 0) Fail(ErrorCode::kInvalidConfig, "top-k must be positive");
  PerDimension<const LabelScores *> by_dim{};
  for (const LabelScores &s : scores) {
    const LabelScores *&slot = by_dim[s.dimension.index()];
    if (slot != nullptr) {
      Fail(ErrorCode::kMissingDimension,
           "dimension " + std::string(s.dimension.DisplayName()) +
               " scored twice");
    }
    slot = &s;
  }
  PerDimension<double> features{};
  for (Dimension d : AllDimensions()) {
    const LabelScores *s = by_dim[d.index()];
    if (s == nullptr) {
      Fail(ErrorCode::kMissingDimension,
           "no scores for " + std::string(d.DisplayName()));
    }
    if (s->scores.empty()) {
      Fail(ErrorCode::kInvalidConfig,
           "empty score list for " + std::string(d.DisplayName()));
    }
    std::vector<double> sorted = s->scores;
    const std::size_t top = std::min(k, sorted.size());
    std::partial_sort(sorted.begin(), sorted.begin() + top, sorted.end(),
                      std::greater<>());
    double sum = 0;
    for (std::size_t i = 0; i < top; ++i) sum += sorted[i];
    features[d.index()] = sum / static_cast<double>(top);
  }
  return features;
}

BuiltinScorer::BuiltinScorer(const EmbeddingTable &embeddings)
    : embeddings_(embeddings) {}

std::vector<LabelScores> BuiltinScorer::ScoreAll(
    std::string_view /*text*/, std::span<const std::string> tokens,
    std::span<const LabelSet> label_sets) const {
  const std::vector<double> doc = DocumentVector(tokens, embeddings_);
  const double doc_norm = Norm(doc);
  std::vector<LabelScores> out;
  out.reserve(label_sets.size());
  for (const LabelSet &set : label_sets) {
    out.push_back(ScoreAgainst(doc, doc_norm, set, embeddings_));
    ValidateScores(set.labels.size(), out.back().scores);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ExternalScorer

ExternalScorer::ExternalScorer(EndpointConfig config)
    : config_(std::move(config)),
      in_flight_(std::make_unique<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(
              1, config_.max_in_flight)))) {}

ExternalScorer::~ExternalScorer() = default;

LabelScores ExternalScorer::ScoreLabels(std::string_view text,
                                        const LabelSet &labels) const {
  const nlohmann::json request = {{"text", text},
                                  {"labels", labels.labels},
                                  {"multi_label", true}};
  const std::string body = request.dump();
  const auto timeout = config_.timeout;

  ErrorCode last_code = ErrorCode::kServiceUnreachable;
  std::string last_message;
  auto delay = config_.backoff;
  for (int attempt = 0; attempt <= std::max(0, config_.retries); ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    httplib::Result result;
    {
      in_flight_->acquire();
      httplib::Client client(EndpointHost(config_.endpoint));
      client.set_connection_timeout(timeout);
      client.set_read_timeout(timeout);
      client.set_write_timeout(timeout);
      result = client.Post("/score", body, "application/json");
      in_flight_->release();
    }
    if (!result) {
      const httplib::Error err = result.error();
      last_code = (err == httplib::Error::Read ||
                   err == httplib::Error::ConnectionTimeout)
                      ? ErrorCode::kTimeout
                      : ErrorCode::kServiceUnreachable;
      last_message = config_.endpoint + ": " + httplib::to_string(err);
      continue;
    }
    if (result->status >= 500) {
      last_code = ErrorCode::kServiceUnreachable;
      last_message = config_.endpoint + ": HTTP " +
                     std::to_string(result->status);
      continue;
    }
    if (result->status != 200) {
      Fail(ErrorCode::kProtocolViolation,
           "request rejected with HTTP " + std::to_string(result->status));
    }
    const nlohmann::json response =
        nlohmann::json::parse(result->body, nullptr, false);
    if (response.is_discarded() || !response.is_object() ||
        !response.contains("scores") || !response["scores"].is_array()) {
      Fail(ErrorCode::kProtocolViolation, "response lacks a scores array");
    }
    LabelScores out{labels.dimension, {}};
    for (const auto &score : response["scores"]) {
      if (!score.is_number()) {
        Fail(ErrorCode::kProtocolViolation, "non-numeric score in response");
      }
      out.scores.push_back(score.get<double>());
    }
    ValidateScores(labels.labels.size(), out.scores);
    return out;
  }
  Fail(last_code, last_message + " (after " +
                      std::to_string(std::max(0, config_.retries) + 1) +
                      " attempts)");
}

std::vector<LabelScores> ExternalScorer::ScoreAll(
    std::string_view text, std::span<const std::string> /*tokens*/,
    std::span<const LabelSet> label_sets) const {
  std::vector<LabelScores> out;
  out.reserve(label_sets.size());
  for (const LabelSet &set : label_sets) out.push_back(ScoreLabels(text, set));
  return out;
}

bool ExternalScorer::Healthy() const {
  httplib::Client client(EndpointHost(config_.endpoint));
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  const auto result = client.Get("/health");
  if (!result || result->status != 200) return false;
  const auto body = nlohmann::json::parse(result->body, nullptr, false);
  return body.is_object() && body.value("status", "") == "ok";
}

LabelScores ScoreLabelsExternal(std::string_view text, const LabelSet &labels,
                                const EndpointConfig &config) {
  return ExternalScorer(config).ScoreLabels(text, labels);
}

}  // namespace moralscope::zsc
