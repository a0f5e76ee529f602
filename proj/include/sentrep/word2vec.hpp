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

// CBOW and SkipGram word embeddings trained with negative sampling, and
// sentence composition by elementwise addition of input vectors.

#ifndef SENTREP_WORD2VEC_HPP
#define SENTREP_WORD2VEC_HPP

#include <atomic>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "sentrep/config.hpp"
#include "sentrep/corpus.hpp"
#include "sentrep/fastsent.hpp"
#include "sentrep/loss.hpp"
#include "sentrep/matrix.hpp"
#include "sentrep/parallel.hpp"

namespace sentrep {

enum class EmbeddingMode { cbow, skipgram };

inline const char* to_string(EmbeddingMode m) { return m == EmbeddingMode::cbow ? "cbow" : "skipgram"; }

template <typename T>
struct WordEmbeddingModel {
  EmbeddingMode mode = EmbeddingMode::cbow;
  Matrix<T> input;   // vocab x dim
  Matrix<T> output;  // vocab x dim
  Vocabulary vocab;
  TrainConfig cfg;

  /// Input vectors uniform, output vectors zero (word2vec convention).
  static WordEmbeddingModel create(Vocabulary vocab, const TrainConfig& cfg, EmbeddingMode mode) {
    cfg.validate();
    if (cfg.window < 1) throw DataError("window must be >= 1");
    if (vocab.empty()) throw DataError("empty vocabulary");
    WordEmbeddingModel m;
    m.mode = mode;
    m.input = init_matrix<T>(vocab.size(), cfg.dim, cfg.seed);
    m.output = Matrix<T>(vocab.size(), cfg.dim);
    m.vocab = std::move(vocab);
    m.cfg = cfg;
    return m;
  }

  std::size_t dim() const { return input.cols(); }
};

/// Sum of input vectors; zero vector flagged empty when no token is known.
template <typename T>
EncodedVector<T> compose_additive(const WordEmbeddingModel<T>& model, std::span<const Vocabulary::Id> tokens) {
  return {detail::sum_rows(model.input, tokens), tokens.empty()};
}

template <typename T>
EncodedVector<T> compose_additive(const WordEmbeddingModel<T>& model, const std::string& raw) {
  const auto ids = model.vocab.lookup(tokenize(raw));
  return compose_additive(model, std::span<const Vocabulary::Id>(ids));
}

template <typename T>
struct WordEmbeddingGradients {
  RowGradients<T> input;
  RowGradients<T> output;
};

namespace detail {

/// Scores `hidden` against the target and negative output rows, reports
/// output-row gradients to `out_sink(id, coeff)` (gradient = coeff * hidden)
/// and accumulates d loss / d hidden into `dhidden`.
template <typename T, typename OutSink>
double negative_sampling_head(const Matrix<T>& output, std::span<const T> hidden, Vocabulary::Id target,
                              std::span<const std::uint32_t> negatives, std::vector<T>& dhidden, OutSink&& out_sink) {
  std::vector<T> neg_scores(negatives.size()), neg_grads(negatives.size());
  const T ts = static_cast<T>(dot(hidden, output.row(target)));
  for (std::size_t k = 0; k < negatives.size(); ++k) neg_scores[k] = static_cast<T>(dot(hidden, output.row(negatives[k])));
  T dt{};
  const double loss = sampled_nll(ts, std::span<const T>(neg_scores), dt, std::span<T>(neg_grads));
  axpy(static_cast<double>(dt), output.row(target), dhidden);
  out_sink(target, static_cast<double>(dt));
  for (std::size_t k = 0; k < negatives.size(); ++k) {
    axpy(static_cast<double>(neg_grads[k]), output.row(negatives[k]), dhidden);
    out_sink(negatives[k], static_cast<double>(neg_grads[k]));
  }
  return loss;
}

}  // namespace detail

/// CBOW step: the mean of the context input vectors predicts `center`
/// against the given negatives.
template <typename T>
double cbow_example_loss(const WordEmbeddingModel<T>& m, std::span<const Vocabulary::Id> context, Vocabulary::Id center,
                         std::span<const std::uint32_t> negatives, WordEmbeddingGradients<T>* grads = nullptr) {
  if (context.empty()) throw DataError("cbow: empty context");
  std::vector<T> hidden(m.dim(), T(0)), dhidden(m.dim(), T(0));
  const double inv = 1.0 / static_cast<double>(context.size());
  for (auto w : context) axpy(inv, m.input.row(w), hidden);
  if (grads) grads->input.dim = grads->output.dim = m.dim();
  const double loss = detail::negative_sampling_head(m.output, std::span<const T>(hidden), center, negatives, dhidden,
                                                     [&](Vocabulary::Id id, double coeff) {
                                                       if (grads) grads->output.add(id, coeff, hidden);
                                                     });
  if (grads)
    for (auto w : context) grads->input.add(w, inv, dhidden);
  return loss;
}

/// SkipGram step: the input vector of `center` predicts one context word.
template <typename T>
double skipgram_example_loss(const WordEmbeddingModel<T>& m, Vocabulary::Id center, Vocabulary::Id context,
                             std::span<const std::uint32_t> negatives, WordEmbeddingGradients<T>* grads = nullptr) {
  std::vector<T> dhidden(m.dim(), T(0));
  const auto hidden = m.input.row(center);
  if (grads) grads->input.dim = grads->output.dim = m.dim();
  const double loss = detail::negative_sampling_head(m.output, hidden, context, negatives, dhidden,
                                                     [&](Vocabulary::Id id, double coeff) {
                                                       if (grads) grads->output.add(id, coeff, hidden);
                                                     });
  if (grads) grads->input.add(center, 1.0, dhidden);
  return loss;
}

/// One pass (cfg.epochs passes) over every token position with a fixed
/// symmetric window that does not cross sentence boundaries. Always uses
/// negative sampling (cfg.negative_samples, or 5 when left on auto).
template <typename T>
TrainingReport train(WordEmbeddingModel<T>& model, const std::vector<std::vector<Vocabulary::Id>>& sentences) {
  const auto& cfg = model.cfg;
  cfg.validate();
  std::size_t positions = 0;
  for (const auto& s : sentences) positions += s.size();
  if (positions == 0) throw DataError("empty corpus");
  const std::size_t k = cfg.negative_samples <= 0 ? 5 : static_cast<std::size_t>(cfg.negative_samples);
  const NegativeSampler sampler(model.vocab.counts());
  if (k >= model.vocab.size()) throw DataError("negative samples must be fewer than the vocabulary size");
  std::uint64_t total_tokens = 0;
  for (auto c : model.vocab.counts()) total_tokens += c;

  const std::size_t planned = positions * cfg.epochs;
  LossTracker tracker(planned, cfg.report_every);
  std::mutex tracker_mu;
  std::atomic<std::size_t> processed{0};
  Stopwatch clock;
  const std::size_t d = model.dim();

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    parallel_for(sentences.size(), cfg.workers, [&](std::size_t begin, std::size_t end, std::size_t worker) {
      Rng rng = Rng::for_worker(cfg.seed + epoch * 7919, worker);
      std::vector<std::uint32_t> negatives;
      std::vector<Vocabulary::Id> kept, context;
      std::vector<T> hidden(d), dhidden(d);
      for (std::size_t si = begin; si < end; ++si) {
        const auto& raw = sentences[si];
        const double lr = lr_at(static_cast<double>(processed.fetch_add(raw.size())) / static_cast<double>(planned), cfg);
        kept.clear();
        for (auto w : raw) {
          if (cfg.subsample <= 0.0 || rng.uniform() < subsample_keep_prob(model.vocab.count(w), total_tokens, cfg.subsample))
            kept.push_back(w);
        }
        for (std::size_t pos = 0; pos < kept.size(); ++pos) {
          const std::size_t lo = pos >= cfg.window ? pos - cfg.window : 0;
          const std::size_t hi = std::min(kept.size(), pos + cfg.window + 1);
          context.clear();
          for (std::size_t j = lo; j < hi; ++j)
            if (j != pos) context.push_back(kept[j]);
          if (context.empty()) {
            std::lock_guard lock(tracker_mu);
            tracker.skip();
            continue;
          }
          const auto center = kept[pos];
          double loss = 0.0;
          auto update_out = [&](Vocabulary::Id id, double coeff) { axpy(-lr * coeff, hidden, model.output.row(id)); };
          if (model.mode == EmbeddingMode::cbow) {
            std::fill(hidden.begin(), hidden.end(), T(0));
            std::fill(dhidden.begin(), dhidden.end(), T(0));
            const double inv = 1.0 / static_cast<double>(context.size());
            for (auto w : context) axpy(inv, model.input.row(w), hidden);
            sampler.draw(rng, k, center, negatives);
            loss = detail::negative_sampling_head(model.output, std::span<const T>(hidden), center,
                                                  std::span<const std::uint32_t>(negatives), dhidden, update_out);
            for (auto w : context) axpy(-lr * inv, dhidden, model.input.row(w));
          } else {
            for (auto c : context) {
              auto in_row = model.input.row(center);
              std::copy(in_row.begin(), in_row.end(), hidden.begin());
              std::fill(dhidden.begin(), dhidden.end(), T(0));
              sampler.draw(rng, k, c, negatives);
              loss += detail::negative_sampling_head(model.output, std::span<const T>(hidden), c,
                                                     std::span<const std::uint32_t>(negatives), dhidden, update_out);
              axpy(-lr, dhidden, in_row);
            }
            loss /= static_cast<double>(context.size());
          }
          std::lock_guard lock(tracker_mu);
          if (!std::isfinite(loss)) throw NumericError("word embedding loss diverged");
          tracker.add(loss);
        }
      }
    });
  }
  if (!model.input.all_finite() || !model.output.all_finite()) throw NumericError("word embeddings diverged");
  return tracker.finish(clock.seconds());
}

}  // namespace sentrep

#endif  // SENTREP_WORD2VEC_HPP
