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

#include "moralscope/synthetic.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "moralscope/error.h"
#include "moralscope/rng.h"

namespace moralscope::synthetic {
namespace {

constexpr std::string_view kModule = "synthetic";

constexpr std::size_t kPosEmotion = 0;
constexpr std::size_t kNegEmotion = 1;

// Neutral vocabulary. Words that happen to hit the lexicon or dictionary
// in use are dropped at generation time.
constexpr std::string_view kFiller[] = {
    "today",   "still",  "just",    "going",  "time",    "week",
    "city",    "news",   "update",  "morning", "coffee", "walk",
    "store",   "window", "street",  "online", "phone",   "weather",
    "kitchen", "bread",  "garden",  "music",  "movie",   "book",
    "paper",   "chair",  "green",   "blue",   "river",   "tree",
    "evening", "bus",    "tea",     "lunch",  "dinner",  "radio",
    "table",   "door",   "car",     "park",   "dog",     "cat",
    "rain",    "snow",   "sun",     "cloud",  "yard",    "friday",
};

constexpr std::string_view kHashtags[] = {
    "#covid", "#COVID19", "#coronavirus", "#StayHome", "#lockdown",
};

int Binomial(Xorshift64Star &rng, int trials, double p) {
  int k = 0;
  for (int i = 0; i < trials; ++i) k += rng.Uniform() < p ? 1 : 0;
  return k;
}

std::size_t TotalHits(const std::vector<std::size_t> &counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return total;
}

struct Vocabulary {
  PerDimension<std::vector<std::string>> moral;  // matches only that dim
  std::array<std::vector<std::string>, lexicon::kNumCategories> emotion;
  std::vector<std::string> filler;
};

// Entry surfaces (a prefix stem matches itself) that hit exactly one group
// of one resource and nothing in the other.
Vocabulary BuildVocabulary(const lexicon::MergedLexicon &lexicon,
                           const lexicon::CategoryDictionary &dict) {
  Vocabulary vocab;
  std::vector<std::size_t> moral_counts;
  std::vector<std::size_t> category_counts;
  auto classify = [&](const std::string &word) {
    const std::string tokens[] = {word};
    lexicon.matcher().Match(tokens, moral_counts);
    dict.matcher().Match(tokens, category_counts);
  };

  std::array<std::size_t, lexicon::kNumCategories> groups{};
  for (std::size_t c = 0; c < lexicon::kNumCategories; ++c) {
    const auto g = dict.GroupOf(lexicon::SelectedCategories()[c]);
    if (!g) {
      throw Error(kModule, ErrorCode::kInvalidConfig,
                  "dictionary lacks " + lexicon::SelectedCategories()[c]);
    }
    groups[c] = *g;
  }

  std::set<std::string> seen;
  auto consider = [&](const std::string &word) {
    if (!seen.insert(word).second) return;
    classify(word);
    const std::size_t moral_hits = TotalHits(moral_counts);
    const std::size_t category_hits = TotalHits(category_counts);
    if (moral_hits == 1 && category_hits == 0) {
      for (std::size_t d = 0; d < kNumDimensions; ++d) {
        if (moral_counts[d] == 1) vocab.moral[d].push_back(word);
      }
    } else if (moral_hits == 0 && category_hits == 1) {
      for (std::size_t c = 0; c < lexicon::kNumCategories; ++c) {
        if (category_counts[groups[c]] == 1) vocab.emotion[c].push_back(word);
      }
    }
  };

  for (const auto &entries : lexicon.all_entries()) {
    for (const auto &[key, entry] : entries) {
      consider(entry.surface);
    }
  }
  for (const auto &[name, entries] : dict.categories()) {
    for (const auto &[key, entry] : entries) {
      consider(entry.surface);
    }
  }
  for (std::string_view w : kFiller) {
    const std::string word(w);
    classify(word);
    if (TotalHits(moral_counts) == 0 && TotalHits(category_counts) == 0) {
      vocab.filler.push_back(word);
    }
  }

  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    if (vocab.moral[d].empty()) {
      throw Error(kModule, ErrorCode::kInvalidConfig,
                  "no exclusive words for " +
                      std::string(Dimension::FromIndex(d).DisplayName()));
    }
  }
  for (std::size_t c = 0; c < lexicon::kNumCategories; ++c) {
    if (vocab.emotion[c].empty()) {
      throw Error(kModule, ErrorCode::kInvalidConfig,
                  "no exclusive words for " + lexicon::SelectedCategories()[c]);
    }
  }
  if (vocab.filler.size() < 8) {
    throw Error(kModule, ErrorCode::kInvalidConfig, "too few filler words");
  }
  return vocab;
}

const std::string &Pick(Xorshift64Star &rng,
                        const std::vector<std::string> &words) {
  return words[rng.Below(words.size())];
}

// Surface noise that Normalize removes: capitals, trailing punctuation.
std::string Decorate(Xorshift64Star &rng, const std::string &word) {
  std::string out = word;
  const double u = rng.Uniform();
  if (u < 0.1) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  } else if (u < 0.15) {
    for (char &ch : out) {
      ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
  }
  const double v = rng.Uniform();
  if (v < 0.05) {
    out += "!";
  } else if (v < 0.1) {
    out += ",";
  } else if (v < 0.13) {
    out += "...";
  }
  return out;
}

std::vector<double> Axis(std::size_t dim, std::size_t axis, double scale) {
  std::vector<double> v(dim, 0.0);
  v[axis] = scale;
  return v;
}

std::vector<double> AddNoise(Xorshift64Star &rng, std::vector<double> v,
                             double noise) {
  const double per_component = noise / std::sqrt(static_cast<double>(v.size()));
  for (double &x : v) x += per_component * rng.Gaussian();
  return v;
}

zsc::EmbeddingTable BuildEmbeddings(const lexicon::MergedLexicon &lexicon,
                                    const Vocabulary &vocab,
                                    const GeneratorConfig &config,
                                    Xorshift64Star &rng) {
  const std::size_t dim = config.embedding_dim;
  zsc::EmbeddingTable table(dim);

  // Every label surface and every emitted moral word, in sorted order so
  // the noise draws do not depend on hash order.
  std::set<std::string> words;
  for (const auto &entries : lexicon.all_entries()) {
    for (const auto &[key, entry] : entries) words.insert(entry.surface);
  }
  for (const auto &list : vocab.moral) words.insert(list.begin(), list.end());

  std::vector<std::size_t> counts;
  for (const std::string &word : words) {
    const std::string tokens[] = {word};
    lexicon.matcher().Match(tokens, counts);
    std::vector<double> v(dim, 0.0);
    double norm2 = 0.0;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (counts[d] > 0) {
        v[d] = 1.0;
        norm2 += 1.0;
      }
    }
    if (norm2 == 0.0) continue;  // label stem that matches nothing itself
    for (double &x : v) x /= std::sqrt(norm2);
    table.Add(word, AddNoise(rng, std::move(v), config.embedding_noise));
  }

  for (const std::string &word : vocab.filler) {
    table.Add(word,
              AddNoise(rng, Axis(dim, kNumDimensions, config.filler_norm),
                       config.embedding_noise * config.filler_norm));
  }
  return table;
}

corpus::Timestamp WindowStart() {
  return *corpus::ParseDateBound("2020-03-12", false);
}

corpus::Timestamp WindowEnd() {
  return *corpus::ParseDateBound("2020-05-25", true);
}

}  // namespace

const std::vector<PlantedCell> &PlantedCells() {
  static const std::vector<PlantedCell> cells = {
      {kPosEmotion, Dimension(Foundation::kCare, Polarity::kVirtue), 0.6},
      {kNegEmotion, Dimension(Foundation::kPurity, Polarity::kVice), 0.5},
  };
  return cells;
}

corpus::FilterSpec SyntheticFilter() {
  corpus::FilterSpec spec;
  spec.countries = {"CA"};
  spec.langs = {"en", "fr"};
  for (std::string_view tag : kHashtags) spec.keywords.insert(std::string(tag));
  spec.start = WindowStart();
  spec.end = WindowEnd();
  return spec;
}

SyntheticCorpus Generate(const lexicon::MergedLexicon &lexicon,
                         const lexicon::CategoryDictionary &dict,
                         const GeneratorConfig &config) {
  if (config.documents < 3 || config.embedding_dim <= kNumDimensions ||
      !(config.p > 0.0 && config.p < 1.0) ||
      !(config.background >= 0.0 && config.background <= 1.0)) {
    throw Error(kModule, ErrorCode::kInvalidConfig,
                "invalid synthetic generator settings");
  }
  // Planted words max out at 5 + 5 + 4 + 4, then one per other dimension
  // and category, plus the hashtag.
  constexpr std::size_t kMaxContent = 5 + 5 + 4 + 4 + 8 + 3 + 1;
  if (config.doc_length < kMaxContent + 1) {
    throw Error(kModule, ErrorCode::kInvalidConfig,
                "doc_length must be at least " +
                    std::to_string(kMaxContent + 1));
  }

  const Vocabulary vocab = BuildVocabulary(lexicon, dict);
  Xorshift64Star rng(config.seed);

  SyntheticCorpus out;
  out.embeddings = BuildEmbeddings(lexicon, vocab, config, rng);

  const std::size_t care = PlantedCells()[0].dimension.index();
  const std::size_t degradation = PlantedCells()[1].dimension.index();
  const auto start = WindowStart();
  const auto span_seconds =
      static_cast<std::uint64_t>((WindowEnd() - start).count()) + 1;

  const std::size_t total = config.documents + config.decoys;
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<std::string> words;
    auto emit = [&](const std::vector<std::string> &list, int times) {
      for (int t = 0; t < times; ++t) words.push_back(Pick(rng, list));
    };

    const int s = Binomial(rng, 3, config.p);
    const int t = Binomial(rng, 2, config.p);
    emit(vocab.moral[care], s + Binomial(rng, 2, config.p));
    emit(vocab.emotion[kPosEmotion], s + Binomial(rng, 2, config.p));
    emit(vocab.moral[degradation], t + Binomial(rng, 2, config.p));
    emit(vocab.emotion[kNegEmotion], t + Binomial(rng, 2, config.p));
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (d == care || d == degradation) continue;
      emit(vocab.moral[d], Binomial(rng, 1, config.background));
    }
    for (std::size_t c = 2; c < lexicon::kNumCategories; ++c) {
      emit(vocab.emotion[c], Binomial(rng, 1, config.p));
    }

    std::string hashtag(kHashtags[rng.Below(std::size(kHashtags))]);
    const bool decoy = i >= config.documents;
    const std::size_t decoy_kind = decoy ? (i - config.documents) % 4 : 4;
    if (decoy_kind == 2) hashtag = "#weekend";
    words.push_back(hashtag);
    while (words.size() < config.doc_length) emit(vocab.filler, 1);
    rng.Shuffle(std::span<std::string>(words));

    std::string text;
    if (rng.Uniform() < 0.2) text += "@user" + std::to_string(rng.Below(500)) + " ";
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (w > 0) text += ' ';
      text += words[w][0] == '#' ? words[w] : Decorate(rng, words[w]);
    }
    if (rng.Uniform() < 0.2) text += " https://t.co/x" + std::to_string(rng.Below(100000));

    corpus::Document doc;
    char id[32];
    std::snprintf(id, sizeof id, "%s-%06zu", decoy ? "dec" : "syn", i + 1);
    doc.id = id;
    doc.text = std::move(text);
    doc.created_at = start + std::chrono::seconds(rng.Below(span_seconds));
    doc.lang = rng.Uniform() < 0.8 ? "en" : "fr";
    doc.country = "CA";
    if (decoy_kind == 0) doc.country = "US";
    if (decoy_kind == 1) doc.lang = "de";
    if (decoy_kind == 3) doc.created_at = start - std::chrono::hours(24 * 30);
    out.documents.push_back(std::move(doc));
  }
  return out;
}

std::string DocumentsToJsonl(const std::vector<corpus::Document> &docs) {
  std::string out;
  for (const auto &doc : docs) {
    nlohmann::json j = {{"id", doc.id},
                        {"text", doc.text},
                        {"created_at", corpus::FormatRfc3339(doc.created_at)},
                        {"lang", doc.lang},
                        {"country", doc.country}};
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace moralscope::synthetic
