/*
 * Copyright 2026 The sentrep Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Non-distributed baseline: each sentence is a sparse vector over the most
// frequent corpus words, weighted by raw count times ln(N / df), where every
// sentence counts as one document.

#ifndef SENTREP_TFIDF_HPP
#define SENTREP_TFIDF_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "sentrep/corpus.hpp"
#include "sentrep/error.hpp"
#include "sentrep/similarity.hpp"

namespace sentrep {

inline constexpr std::size_t kDefaultTfidfFeatures = 200000;

struct TfidfModel {
  Vocabulary features;     // feature words, frequency ranked
  std::vector<float> idf;  // indexed by feature id
  std::uint64_t n_sentences = 0;

  std::size_t size() const { return features.size(); }

  friend bool operator==(const TfidfModel&, const TfidfModel&) = default;
};

struct SparseEncoding {
  SparseVector vector;
  bool empty = false;
};

namespace detail {

template <typename R>
TfidfModel tfidf_from_features(Vocabulary features, R&& sentences, std::uint64_t n_sentences) {
  std::vector<std::uint64_t> df(features.size(), 0);
  std::vector<Vocabulary::Id> ids;
  for (const auto& s : sentences) {
    ids = features.lookup(s);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (auto id : ids) ++df[id];
  }
  TfidfModel m;
  m.idf.resize(features.size());
  for (std::size_t i = 0; i < df.size(); ++i) {
    if (df[i] == 0) throw DataError("tfidf: feature word absent from corpus");
    m.idf[i] = static_cast<float>(std::log(static_cast<double>(n_sentences) / static_cast<double>(df[i])));
  }
  m.features = std::move(features);
  m.n_sentences = n_sentences;
  return m;
}

}  // namespace detail

/// Fits on a range of tokenized sentences (iterated twice).
template <std::ranges::forward_range R>
TfidfModel tfidf_fit(const R& sentences, std::size_t max_features = kDefaultTfidfFeatures) {
  VocabularyBuilder b;
  std::uint64_t n = 0;
  for (const auto& s : sentences) {
    b.add(s);
    ++n;
  }
  if (n == 0 || b.total_tokens() == 0) throw DataError("empty corpus");
  return detail::tfidf_from_features(b.finish(1, max_features), sentences, n);
}

/// Fits on a corpus file, reading it twice; blank lines are not sentences.
inline TfidfModel tfidf_fit_file(const std::string& path, std::size_t max_features = kDefaultTfidfFeatures) {
  auto tokenized = [&](auto&& fn) {
    auto in = open_input(path);
    std::string line;
    while (std::getline(in, line)) {
      strip_cr(line);
      if (!is_blank(line)) fn(tokenize(line));
    }
  };
  VocabularyBuilder b;
  std::uint64_t n = 0;
  tokenized([&](const std::vector<std::string>& t) {
    b.add(t);
    ++n;
  });
  if (n == 0 || b.total_tokens() == 0) throw DataError("empty corpus");
  auto features = b.finish(1, max_features);
  std::vector<std::uint64_t> df(features.size(), 0);
  tokenized([&](const std::vector<std::string>& t) {
    auto ids = features.lookup(t);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (auto id : ids) ++df[id];
  });
  TfidfModel m;
  m.idf.resize(features.size());
  for (std::size_t i = 0; i < df.size(); ++i)
    m.idf[i] = static_cast<float>(std::log(static_cast<double>(n) / static_cast<double>(df[i])));
  m.features = std::move(features);
  m.n_sentences = n;
  return m;
}

/// count(w in S) * idf(w) for feature words; zero weights are not stored.
inline SparseEncoding tfidf_encode(const TfidfModel& model, const std::vector<std::string>& tokens) {
  std::map<std::uint32_t, std::uint32_t> counts;
  for (const auto& t : tokens) {
    if (auto id = model.features.find(t)) ++counts[*id];
  }
  SparseEncoding out;
  out.vector.dim = static_cast<std::uint32_t>(model.size());
  for (const auto& [id, c] : counts) {
    const float w = static_cast<float>(c) * model.idf[id];
    if (w != 0.0f) out.vector.entries.emplace_back(id, w);
  }
  out.empty = out.vector.entries.empty();
  return out;
}

inline SparseEncoding tfidf_encode(const TfidfModel& model, const std::string& raw) {
  return tfidf_encode(model, tokenize(raw));
}

}  // namespace sentrep

#endif  // SENTREP_TFIDF_HPP
