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

// FastSent: a sentence is the sum of its words' source embeddings, and that
// sum is trained to predict, through a softmax over target embeddings, every
// word of the neighbouring sentences (and, in the autoencoding variant, its
// own words).

#ifndef SENTREP_FASTSENT_HPP
#define SENTREP_FASTSENT_HPP

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentrep/config.hpp"
#include "sentrep/corpus.hpp"
#include "sentrep/loss.hpp"
#include "sentrep/matrix.hpp"
#include "sentrep/parallel.hpp"

namespace sentrep {

/// Dense sentence encoding; `empty` marks a sentence with no in-vocabulary token.
template <typename T>
struct EncodedVector {
  std::vector<T> values;
  bool empty = false;
};

template <typename T>
struct FastSentModel {
  Matrix<T> source;  // u_w, vocab x dim
  Matrix<T> target;  // v_w, vocab x dim
  Vocabulary vocab;
  bool autoencode = false;
  TrainConfig cfg;

  static FastSentModel create(Vocabulary vocab, const TrainConfig& cfg, bool autoencode) {
    cfg.validate();
    if (vocab.empty()) throw DataError("empty vocabulary");
    FastSentModel m;
    m.source = init_matrix<T>(vocab.size(), cfg.dim, cfg.seed);
    m.target = init_matrix<T>(vocab.size(), cfg.dim, cfg.seed + 1);
    m.vocab = std::move(vocab);
    m.autoencode = autoencode;
    m.cfg = cfg;
    return m;
  }

  std::size_t dim() const { return source.cols(); }

  template <typename U>
  FastSentModel<U> cast() const {
    return {source.template cast<U>(), target.template cast<U>(), vocab, autoencode, cfg};
  }
};

namespace detail {

/// Sum of the given rows. Tokens are visited in sorted id order and summed in
/// double, so any permutation of the same multiset gives the same bits.
template <typename T>
std::vector<T> sum_rows(const Matrix<T>& m, std::span<const Vocabulary::Id> tokens) {
  std::vector<Vocabulary::Id> order(tokens.begin(), tokens.end());
  std::sort(order.begin(), order.end());
  std::vector<double> acc(m.cols(), 0.0);
  for (auto w : order) axpy(1.0, m.row(w), acc);
  return std::vector<T>(acc.begin(), acc.end());
}

}  // namespace detail

template <typename T>
EncodedVector<T> encode(const FastSentModel<T>& model, std::span<const Vocabulary::Id> tokens) {
  return {detail::sum_rows(model.source, tokens), tokens.empty()};
}

template <typename T>
EncodedVector<T> encode(const FastSentModel<T>& model, const std::string& raw) {
  const auto ids = model.vocab.lookup(tokenize(raw));
  return encode(model, std::span<const Vocabulary::Id>(ids));
}

/// Sparse gradient: one dense row per touched vocabulary id.
template <typename T>
struct RowGradients {
  std::size_t dim = 0;
  std::map<Vocabulary::Id, std::vector<T>> rows;

  void add(Vocabulary::Id id, double coeff, std::span<const T> v) {
    auto [it, inserted] = rows.try_emplace(id, dim, T(0));
    axpy(coeff, v, it->second);
  }
};

template <typename T>
struct FastSentGradients {
  RowGradients<T> source;
  RowGradients<T> target;
};

/// Knobs for one example evaluation. `negatives == 0` selects the exact softmax.
struct FastSentStepOptions {
  std::size_t negatives = 0;
  const NegativeSampler* sampler = nullptr;
  Rng* rng = nullptr;
};

namespace detail {

template <typename T>
struct FastSentWorkspace {
  std::vector<T> sentence, dsentence, scores;
  std::vector<Vocabulary::Id> targets;
  std::vector<double> target_counts;
  std::vector<std::uint32_t> negatives;
  std::vector<T> neg_scores, neg_grads;
};

/// Shared forward/backward pass. `sink` receives gradients:
///   sink.target(id, coeff, s)  -- d loss / d v_id = coeff * s
///   sink.source(mid, ds)       -- d loss / d s = ds, to be applied to each mid token
/// Target rows are reported immediately after they are read, so an updating
/// sink sees the same values a pure gradient computation would.
template <typename T, typename Sink>
std::optional<double> fastsent_example(const FastSentModel<T>& m, const SentenceTriple& t, const FastSentStepOptions& opt,
                                       FastSentWorkspace<T>& ws, Sink& sink) {
  const auto& mid = t.mid->tokens;
  if (mid.empty()) return std::nullopt;
  ws.targets.clear();
  ws.targets.insert(ws.targets.end(), t.prev->tokens.begin(), t.prev->tokens.end());
  ws.targets.insert(ws.targets.end(), t.next->tokens.begin(), t.next->tokens.end());
  if (m.autoencode) ws.targets.insert(ws.targets.end(), mid.begin(), mid.end());
  if (ws.targets.empty()) return std::nullopt;

  const std::size_t d = m.dim();
  ws.sentence.assign(d, T(0));
  for (auto w : mid) axpy(1.0, m.source.row(w), ws.sentence);
  ws.dsentence.assign(d, T(0));
  const std::span<const T> s(ws.sentence);
  double loss = 0.0;

  if (opt.negatives == 0) {
    const std::size_t n_vocab = m.target.rows();
    ws.scores.resize(n_vocab);
    for (std::size_t j = 0; j < n_vocab; ++j) ws.scores[j] = static_cast<T>(dot(s, m.target.row(j)));
    double target_score_sum = 0.0;
    for (auto w : ws.targets) target_score_sum += static_cast<double>(ws.scores[w]);
    const double lse = softmax_in_place(std::span<T>(ws.scores));
    const double n_targets = static_cast<double>(ws.targets.size());
    loss = n_targets * lse - target_score_sum;
    ws.target_counts.assign(n_vocab, 0.0);
    for (auto w : ws.targets) ws.target_counts[w] += 1.0;
    for (std::size_t j = 0; j < n_vocab; ++j) {
      const double g = n_targets * static_cast<double>(ws.scores[j]) - ws.target_counts[j];
      axpy(g, m.target.row(j), ws.dsentence);
      sink.target(static_cast<Vocabulary::Id>(j), g, s);
    }
  } else {
    if (opt.sampler == nullptr || opt.rng == nullptr) throw DataError("negative sampling needs a sampler and rng");
    ws.neg_scores.resize(opt.negatives);
    ws.neg_grads.resize(opt.negatives);
    for (auto w : ws.targets) {
      opt.sampler->draw(*opt.rng, opt.negatives, w, ws.negatives);
      const T ts = static_cast<T>(dot(s, m.target.row(w)));
      for (std::size_t k = 0; k < opt.negatives; ++k)
        ws.neg_scores[k] = static_cast<T>(dot(s, m.target.row(ws.negatives[k])));
      T dt{};
      loss += sampled_nll(ts, std::span<const T>(ws.neg_scores), dt, std::span<T>(ws.neg_grads));
      axpy(static_cast<double>(dt), m.target.row(w), ws.dsentence);
      sink.target(w, static_cast<double>(dt), s);
      for (std::size_t k = 0; k < opt.negatives; ++k) {
        axpy(static_cast<double>(ws.neg_grads[k]), m.target.row(ws.negatives[k]), ws.dsentence);
        sink.target(ws.negatives[k], static_cast<double>(ws.neg_grads[k]), s);
      }
    }
  }
  sink.source(mid, std::span<const T>(ws.dsentence));
  return loss;
}

template <typename T>
struct CollectSink {
  FastSentGradients<T>& g;
  void target(Vocabulary::Id id, double coeff, std::span<const T> s) { g.target.add(id, coeff, s); }
  void source(const std::vector<Vocabulary::Id>& mid, std::span<const T> ds) {
    for (auto w : mid) g.source.add(w, 1.0, ds);
  }
};

template <typename T>
struct SgdSink {
  FastSentModel<T>& m;
  double lr;
  void target(Vocabulary::Id id, double coeff, std::span<const T> s) { axpy(-lr * coeff, s, m.target.row(id)); }
  void source(const std::vector<Vocabulary::Id>& mid, std::span<const T> ds) {
    for (auto w : mid) axpy(-lr, ds, m.source.row(w));
  }
};

}  // namespace detail

/// Loss of one training window and, if `grads` is given, its gradient.
/// Returns nullopt when the example is skipped (empty middle sentence or
/// no target words).
template <typename T>
std::optional<double> example_loss(const FastSentModel<T>& model, const SentenceTriple& triple,
                                   FastSentGradients<T>* grads = nullptr, const FastSentStepOptions& opt = {}) {
  detail::FastSentWorkspace<T> ws;
  FastSentGradients<T> scratch;
  FastSentGradients<T>& g = grads ? *grads : scratch;
  g.source.dim = g.target.dim = model.dim();
  detail::CollectSink<T> sink{g};
  return detail::fastsent_example(model, triple, opt, ws, sink);
}

namespace detail {

inline std::vector<Vocabulary::Id> subsampled(const std::vector<Vocabulary::Id>& tokens, const Vocabulary& vocab,
                                              std::uint64_t total, double threshold, Rng& rng) {
  std::vector<Vocabulary::Id> out;
  out.reserve(tokens.size());
  for (auto w : tokens) {
    if (rng.uniform() < subsample_keep_prob(vocab.count(w), total, threshold)) out.push_back(w);
  }
  return out;
}

}  // namespace detail

/// SGD over every window of the corpus for cfg.epochs passes, in corpus
/// order, with linearly decaying learning rate. workers > 1 shards the
/// windows across threads that update the shared parameters without locks.
template <typename T>
TrainingReport train(FastSentModel<T>& model, const Corpus& corpus) {
  const auto& cfg = model.cfg;
  cfg.validate();
  const auto triples = iter_triples(corpus);
  if (triples.empty()) throw DataError("no ordered sentence windows");
  const std::size_t negatives = cfg.resolved_negatives(model.vocab.size());
  NegativeSampler sampler;
  if (negatives > 0) sampler = NegativeSampler(model.vocab.counts());
  std::uint64_t total_tokens = 0;
  for (auto c : model.vocab.counts()) total_tokens += c;

  const std::size_t planned = triples.size() * cfg.epochs;
  LossTracker tracker(planned, cfg.report_every);
  std::mutex tracker_mu;
  std::atomic<std::size_t> processed{0};
  Stopwatch clock;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    parallel_for(triples.size(), cfg.workers, [&](std::size_t begin, std::size_t end, std::size_t worker) {
      Rng rng = Rng::for_worker(cfg.seed + epoch * 7919, worker);
      detail::FastSentWorkspace<T> ws;
      FastSentStepOptions opt{negatives, negatives ? &sampler : nullptr, &rng};
      Sentence prev, mid, next;
      for (std::size_t i = begin; i < end; ++i) {
        const double lr = lr_at(static_cast<double>(processed.fetch_add(1)) / static_cast<double>(planned), cfg);
        SentenceTriple t = triples[i];
        if (cfg.subsample > 0.0) {
          prev.tokens = detail::subsampled(t.prev->tokens, model.vocab, total_tokens, cfg.subsample, rng);
          mid.tokens = detail::subsampled(t.mid->tokens, model.vocab, total_tokens, cfg.subsample, rng);
          next.tokens = detail::subsampled(t.next->tokens, model.vocab, total_tokens, cfg.subsample, rng);
          t = SentenceTriple{&prev, &mid, &next};
        }
        detail::SgdSink<T> sink{model, lr};
        const auto loss = detail::fastsent_example(model, t, opt, ws, sink);
        std::lock_guard lock(tracker_mu);
        if (loss) {
          if (!std::isfinite(*loss)) throw NumericError("FastSent loss diverged");
          tracker.add(*loss);
        } else {
          tracker.skip();
        }
      }
    });
  }
  if (!model.source.all_finite() || !model.target.all_finite()) throw NumericError("FastSent parameters diverged");
  return tracker.finish(clock.seconds());
}

}  // namespace sentrep

#endif  // SENTREP_FASTSENT_HPP
