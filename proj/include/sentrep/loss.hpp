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

#ifndef SENTREP_LOSS_HPP
#define SENTREP_LOSS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "sentrep/error.hpp"
#include "sentrep/rng.hpp"

namespace sentrep {

/// Replaces `scores` by softmax(scores) and returns log(sum(exp(scores))).
/// Max-subtracted; the normalizer is accumulated in double.
template <typename T>
double softmax_in_place(std::span<T> scores) {
  if (scores.empty()) throw NumericError("softmax of empty vector");
  double mx = -INFINITY;
  for (T s : scores) {
    if (!std::isfinite(s)) throw NumericError("non-finite score");
    mx = std::max(mx, static_cast<double>(s));
  }
  double z = 0.0;
  for (T& s : scores) {
    const double e = std::exp(static_cast<double>(s) - mx);
    s = static_cast<T>(e);
    z += e;
  }
  for (T& s : scores) s = static_cast<T>(static_cast<double>(s) / z);
  return mx + std::log(z);
}

/// Negative log softmax probability of `target`. Writes
/// softmax(scores) - onehot(target) into `grad` (same length as `scores`).
template <typename T>
double softmax_nll(std::span<const T> scores, std::size_t target, std::span<T> grad) {
  if (target >= scores.size()) throw DataError("softmax_nll: target out of range");
  std::copy(scores.begin(), scores.end(), grad.begin());
  const double lse = softmax_in_place(grad);
  grad[target] -= T(1);
  return lse - static_cast<double>(scores[target]);
}

template <typename T>
double softmax_nll(std::span<const T> scores, std::size_t target) {
  std::vector<T> grad(scores.size());
  return softmax_nll(scores, target, std::span<T>(grad));
}

/// -log(sigmoid(x)), stable for large |x|.
inline double softplus_neg(double x) { return std::log1p(std::exp(-std::abs(x))) + std::max(-x, 0.0); }

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// Negative-sampling logistic loss
///   -log s(target) - sum_n log s(-negative_n)
/// with its derivatives with respect to each score.
template <typename T>
double sampled_nll(T target_score, std::span<const T> negative_scores, T& d_target, std::span<T> d_negative) {
  if (!std::isfinite(target_score)) throw NumericError("non-finite score");
  double loss = softplus_neg(static_cast<double>(target_score));
  d_target = static_cast<T>(sigmoid(static_cast<double>(target_score)) - 1.0);
  for (std::size_t i = 0; i < negative_scores.size(); ++i) {
    const double s = static_cast<double>(negative_scores[i]);
    if (!std::isfinite(s)) throw NumericError("non-finite score");
    loss += softplus_neg(-s);
    d_negative[i] = static_cast<T>(sigmoid(s));
  }
  return loss;
}

/// Draws noise words from the unigram distribution raised to 3/4.
class NegativeSampler {
 public:
  NegativeSampler() = default;

  explicit NegativeSampler(const std::vector<std::uint64_t>& counts, double power = 0.75) {
    cdf_.reserve(counts.size());
    double acc = 0.0;
    for (auto c : counts) {
      acc += std::pow(static_cast<double>(c), power);
      cdf_.push_back(acc);
    }
    if (acc <= 0.0) throw DataError("negative sampler: no mass");
    for (double& v : cdf_) v /= acc;
    cdf_.back() = 1.0;
  }

  std::size_t vocab_size() const { return cdf_.size(); }

  std::uint32_t draw(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::uint32_t>(it - cdf_.begin());
  }

  /// `k` noise ids, none equal to `exclude`.
  void draw(Rng& rng, std::size_t k, std::uint32_t exclude, std::vector<std::uint32_t>& out) const {
    if (k >= cdf_.size()) throw DataError("negative samples must be fewer than the vocabulary size");
    out.clear();
    while (out.size() < k) {
      const auto id = draw(rng);
      if (id != exclude) out.push_back(id);
    }
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace sentrep

#endif  // SENTREP_LOSS_HPP
