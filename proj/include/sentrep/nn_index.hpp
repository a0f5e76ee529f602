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

// Exact nearest-neighbour search over encoded sentences.

#ifndef SENTREP_NN_INDEX_HPP
#define SENTREP_NN_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "sentrep/encoder.hpp"

namespace sentrep {

struct Neighbor {
  std::size_t index;  // position in the indexed sentence list
  std::string sentence;
  double cosine;
};

class NnIndex {
 public:
  /// Encodes and unit-normalizes every sentence. Sentences that encode to
  /// the zero vector are left out and counted in excluded().
  static NnIndex build(const Encoder& encoder, const std::vector<std::string>& sentences, std::size_t workers = 1) {
    NnIndex idx;
    auto reps = encode_batch(encoder, sentences, workers);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (!normalize(reps[i])) {
        ++idx.excluded_;
        continue;
      }
      if (auto* d = std::get_if<std::vector<float>>(&reps[i])) {
        if (idx.dim_ == 0) idx.dim_ = d->size();
        if (d->size() != idx.dim_) throw DataError("nn index: inconsistent dimensions");
        idx.dense_.insert(idx.dense_.end(), d->begin(), d->end());
      } else {
        idx.sparse_.push_back(std::move(std::get<SparseVector>(reps[i])));
      }
      idx.sentences_.push_back(sentences[i]);
      idx.positions_.push_back(i);
    }
    return idx;
  }

  std::size_t size() const { return sentences_.size(); }
  std::size_t excluded() const { return excluded_; }

  /// The k most similar indexed sentences, by descending cosine; equal
  /// scores keep index order.
  std::vector<Neighbor> query(const Encoder& encoder, const std::string& sentence, std::size_t k) const {
    if (size() == 0) throw DataError("nn index is empty");
    if (k == 0) throw DataError("k must be >= 1");
    auto q = encoder(sentence);
    if (!normalize(q)) throw DataError("query not encodable");
    std::vector<double> scores(size());
    if (const auto* d = std::get_if<std::vector<float>>(&q)) {
      if (d->size() != dim_) throw DataError("query dimension mismatch");
      for (std::size_t i = 0; i < size(); ++i)
        scores[i] = dot(std::span<const float>(dense_.data() + i * dim_, dim_), *d);
    } else {
      for (std::size_t i = 0; i < size(); ++i) scores[i] = dot(sparse_[i], std::get<SparseVector>(q));
    }
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), 0);
    k = std::min(k, size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) { return scores[a] != scores[b] ? scores[a] > scores[b] : a < b; });
    std::vector<Neighbor> out;
    for (std::size_t r = 0; r < k; ++r) {
      const auto i = order[r];
      out.push_back({positions_[i], sentences_[i], std::clamp(scores[i], -1.0, 1.0)});
    }
    return out;
  }

 private:
  static bool normalize(Representation& r) {
    if (auto* d = std::get_if<std::vector<float>>(&r)) {
      const double n = std::sqrt(squared_norm(*d));
      if (n == 0.0) return false;
      for (auto& v : *d) v = static_cast<float>(v / n);
      return true;
    }
    auto& sv = std::get<SparseVector>(r);
    const double n = std::sqrt(sv.squared_norm());
    if (n == 0.0) return false;
    for (auto& [i, v] : sv.entries) v = static_cast<float>(v / n);
    return true;
  }

  std::size_t dim_ = 0;
  std::vector<float> dense_;
  std::vector<SparseVector> sparse_;
  std::vector<std::string> sentences_;
  std::vector<std::size_t> positions_;
  std::size_t excluded_ = 0;
};

inline std::vector<Neighbor> nn_query(const NnIndex& index, const std::string& query, const Encoder& encoder,
                                      std::size_t k) {
  return index.query(encoder, query, k);
}

}  // namespace sentrep

#endif  // SENTREP_NN_INDEX_HPP
