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

// Sequential (denoising) autoencoder: an LSTM encoder reads a corrupted
// sentence, an LSTM decoder started from the encoder's final state
// reconstructs the original sentence with teacher forcing.
//
// Symbol layout: word ids are [0, V). The input embedding table has an extra
// row V for the begin-of-sentence pseudo-input, the output softmax has an
// extra class V for end-of-sentence.

#ifndef SENTREP_SDAE_HPP
#define SENTREP_SDAE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sentrep/config.hpp"
#include "sentrep/corpus.hpp"
#include "sentrep/fastsent.hpp"
#include "sentrep/loss.hpp"
#include "sentrep/matrix.hpp"
#include "sentrep/noise.hpp"
#include "sentrep/text_embeddings.hpp"

namespace sentrep {

struct SdaeConfig {
  TrainConfig train = [] {
    TrainConfig c;
    c.lr0 = 0.1;
    c.lr_min = 1e-4;
    c.dim = 128;
    return c;
  }();
  std::size_t word_dim = 64;
  std::size_t hidden_dim = 128;
  NoiseParams noise;
  double clip_norm = 5.0;

  void validate() const {
    train.validate();
    noise.validate();
    if (word_dim == 0 || hidden_dim == 0) throw DataError("word_dim and hidden_dim must be > 0");
    if (!(clip_norm > 0.0)) throw DataError("clip_norm must be > 0");
  }

  friend bool operator==(const SdaeConfig&, const SdaeConfig&) = default;
};

inline void to_json(nlohmann::json& j, const SdaeConfig& c) {
  j = nlohmann::json{{"train", c.train},
                     {"word_dim", c.word_dim},
                     {"hidden_dim", c.hidden_dim},
                     {"p_delete", c.noise.p_delete},
                     {"p_swap", c.noise.p_swap},
                     {"clip_norm", c.clip_norm}};
}

inline void from_json(const nlohmann::json& j, SdaeConfig& c) {
  c.train = j.at("train").get<TrainConfig>();
  c.word_dim = j.at("word_dim").get<std::size_t>();
  c.hidden_dim = j.at("hidden_dim").get<std::size_t>();
  c.noise.p_delete = j.at("p_delete").get<double>();
  c.noise.p_swap = j.at("p_swap").get<double>();
  c.clip_norm = j.at("clip_norm").get<double>();
}

/// Every trainable block. Also used as the gradient container.
template <typename T>
struct Seq2SeqParams {
  Matrix<T> embeddings;  // (V+1) x word_dim
  Matrix<T> enc_w;       // 4h x (word_dim + h), gate order i, f, o, g
  Matrix<T> enc_b;       // 1 x 4h
  Matrix<T> dec_w;
  Matrix<T> dec_b;
  Matrix<T> out_w;  // (V+1) x h
  Matrix<T> out_b;  // 1 x (V+1)

  static constexpr std::array<const char*, 7> kNames = {"embeddings", "enc_w", "enc_b", "dec_w",
                                                        "dec_b",      "out_w", "out_b"};

  std::array<Matrix<T>*, 7> blocks() { return {&embeddings, &enc_w, &enc_b, &dec_w, &dec_b, &out_w, &out_b}; }
  std::array<const Matrix<T>*, 7> blocks() const {
    return {&embeddings, &enc_w, &enc_b, &dec_w, &dec_b, &out_w, &out_b};
  }

  Seq2SeqParams zeros_like() const {
    Seq2SeqParams z;
    auto dst = z.blocks();
    auto src = blocks();
    for (std::size_t i = 0; i < dst.size(); ++i) *dst[i] = Matrix<T>(src[i]->rows(), src[i]->cols());
    return z;
  }

  template <typename U>
  Seq2SeqParams<U> cast() const {
    return {embeddings.template cast<U>(), enc_w.template cast<U>(), enc_b.template cast<U>(),
            dec_w.template cast<U>(),      dec_b.template cast<U>(), out_w.template cast<U>(),
            out_b.template cast<U>()};
  }

  friend bool operator==(const Seq2SeqParams&, const Seq2SeqParams&) = default;
};

template <typename T>
struct Seq2SeqModel {
  Seq2SeqParams<T> params;
  Vocabulary vocab;
  SdaeConfig cfg;
  bool frozen_embeddings = false;

  std::size_t bos() const { return vocab.size(); }
  std::size_t eos() const { return vocab.size(); }
  std::size_t word_dim() const { return params.embeddings.cols(); }
  std::size_t hidden_dim() const { return params.enc_b.cols() / 4; }

  /// Random initialization. If `pretrained` is given its vectors are copied
  /// into the embedding table (word_dim becomes its dimension) and the table
  /// is frozen; words it lacks keep their random rows.
  static Seq2SeqModel create(Vocabulary vocab, SdaeConfig cfg, const TextEmbeddings* pretrained = nullptr) {
    if (vocab.empty()) throw DataError("empty vocabulary");
    if (pretrained != nullptr) cfg.word_dim = pretrained->dim;
    cfg.validate();
    const std::size_t V = vocab.size(), dw = cfg.word_dim, h = cfg.hidden_dim;
    Rng rng(cfg.train.seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(h));
    Seq2SeqModel m;
    m.params.embeddings = uniform_matrix<T>(V + 1, dw, 0.1, rng);
    m.params.enc_w = uniform_matrix<T>(4 * h, dw + h, scale, rng);
    m.params.enc_b = Matrix<T>(1, 4 * h);
    m.params.dec_w = uniform_matrix<T>(4 * h, dw + h, scale, rng);
    m.params.dec_b = Matrix<T>(1, 4 * h);
    m.params.out_w = uniform_matrix<T>(V + 1, h, scale, rng);
    m.params.out_b = Matrix<T>(1, V + 1);
    // Forget gates start open.
    for (std::size_t k = h; k < 2 * h; ++k) {
      m.params.enc_b(0, k) = T(1);
      m.params.dec_b(0, k) = T(1);
    }
    if (pretrained != nullptr) {
      for (std::size_t i = 0; i < V; ++i) {
        auto it = pretrained->vectors.find(vocab.token(static_cast<Vocabulary::Id>(i)));
        if (it == pretrained->vectors.end()) continue;
        auto row = m.params.embeddings.row(i);
        std::transform(it->second.begin(), it->second.end(), row.begin(), [](float v) { return static_cast<T>(v); });
      }
      m.frozen_embeddings = true;
    }
    m.vocab = std::move(vocab);
    m.cfg = cfg;
    return m;
  }

  template <typename U>
  Seq2SeqModel<U> cast() const {
    return {params.template cast<U>(), vocab, cfg, frozen_embeddings};
  }
};

namespace detail {

template <typename T>
struct LstmStep {
  std::size_t token = 0;  // embedding row fed at this step
  std::vector<T> input;   // [x ; h_prev]
  std::vector<T> gates;   // activated i, f, o, g
  std::vector<T> c_prev, c, tanh_c, h;
};

template <typename T>
void lstm_forward(const Matrix<T>& w, const Matrix<T>& b, std::span<const T> x, std::span<const T> h_prev,
                  std::span<const T> c_prev, LstmStep<T>& st) {
  const std::size_t hd = h_prev.size();
  st.input.assign(x.begin(), x.end());
  st.input.insert(st.input.end(), h_prev.begin(), h_prev.end());
  st.gates.resize(4 * hd);
  for (std::size_t r = 0; r < 4 * hd; ++r) {
    const double z = dot(w.row(r), st.input) + static_cast<double>(b(0, r));
    st.gates[r] = static_cast<T>(r < 3 * hd ? sigmoid(z) : std::tanh(z));
  }
  st.c_prev.assign(c_prev.begin(), c_prev.end());
  st.c.resize(hd);
  st.tanh_c.resize(hd);
  st.h.resize(hd);
  for (std::size_t k = 0; k < hd; ++k) {
    const T i = st.gates[k], f = st.gates[hd + k], o = st.gates[2 * hd + k], g = st.gates[3 * hd + k];
    st.c[k] = f * c_prev[k] + i * g;
    st.tanh_c[k] = std::tanh(st.c[k]);
    st.h[k] = o * st.tanh_c[k];
  }
}

/// On entry dh/dc hold the loss gradient w.r.t. this step's h and c; on exit
/// they hold the gradient w.r.t. h_prev and c_prev. dx receives the input
/// gradient (overwritten). dz is scratch.
template <typename T>
void lstm_backward(const Matrix<T>& w, const LstmStep<T>& st, std::vector<T>& dh, std::vector<T>& dc, Matrix<T>& dw,
                   Matrix<T>& db, std::vector<T>& dx, std::vector<T>& dz) {
  const std::size_t hd = dh.size();
  const std::size_t in = st.input.size() - hd;
  dz.resize(4 * hd);
  for (std::size_t k = 0; k < hd; ++k) {
    const T i = st.gates[k], f = st.gates[hd + k], o = st.gates[2 * hd + k], g = st.gates[3 * hd + k];
    const T tc = st.tanh_c[k];
    const T d_o = dh[k] * tc;
    const T d_c = dc[k] + dh[k] * o * (T(1) - tc * tc);
    dz[k] = d_c * g * i * (T(1) - i);
    dz[hd + k] = d_c * st.c_prev[k] * f * (T(1) - f);
    dz[2 * hd + k] = d_o * o * (T(1) - o);
    dz[3 * hd + k] = d_c * i * (T(1) - g * g);
    dc[k] = d_c * f;
  }
  std::vector<T> dinput(in + hd, T(0));
  for (std::size_t r = 0; r < 4 * hd; ++r) {
    const double g = static_cast<double>(dz[r]);
    if (g == 0.0) continue;
    axpy(g, st.input, dw.row(r));
    db(0, r) += dz[r];
    axpy(g, w.row(r), dinput);
  }
  dx.assign(dinput.begin(), dinput.begin() + static_cast<std::ptrdiff_t>(in));
  std::copy(dinput.begin() + static_cast<std::ptrdiff_t>(in), dinput.end(), dh.begin());
}

}  // namespace detail

template <typename T>
struct Seq2SeqWorkspace {
  std::vector<detail::LstmStep<T>> enc, dec;
  std::vector<T> logits, dlogits, dh, dc, dx, dz;
  /// Embedding rows that received gradient in the last call.
  std::vector<std::size_t> touched;
};

namespace detail {

template <typename T>
void run_encoder(const Seq2SeqModel<T>& m, std::span<const Vocabulary::Id> source, Seq2SeqWorkspace<T>& ws) {
  const std::size_t hd = m.hidden_dim();
  ws.enc.resize(source.size());
  std::vector<T> zeros(hd, T(0));
  for (std::size_t t = 0; t < source.size(); ++t) {
    auto& st = ws.enc[t];
    st.token = source[t];
    std::span<const T> hp = t ? std::span<const T>(ws.enc[t - 1].h) : std::span<const T>(zeros);
    std::span<const T> cp = t ? std::span<const T>(ws.enc[t - 1].c) : std::span<const T>(zeros);
    lstm_forward(m.params.enc_w, m.params.enc_b, m.params.embeddings.row(st.token), hp, cp, st);
  }
}

}  // namespace detail

/// Final encoder hidden state; zero vector flagged empty for an empty sentence.
template <typename T>
EncodedVector<T> encode(const Seq2SeqModel<T>& model, std::span<const Vocabulary::Id> tokens) {
  if (tokens.empty()) return {std::vector<T>(model.hidden_dim(), T(0)), true};
  const std::size_t hd = model.hidden_dim();
  std::vector<T> h(hd, T(0)), c(hd, T(0));
  detail::LstmStep<T> st;
  for (auto w : tokens) {
    detail::lstm_forward(model.params.enc_w, model.params.enc_b, model.params.embeddings.row(w),
                         std::span<const T>(h), std::span<const T>(c), st);
    h.swap(st.h);
    c.swap(st.c);
  }
  return {std::move(h), false};
}

template <typename T>
EncodedVector<T> encode(const Seq2SeqModel<T>& model, const std::string& raw) {
  const auto ids = model.vocab.lookup(tokenize(raw));
  return encode(model, std::span<const Vocabulary::Id>(ids));
}

/// Teacher-forced reconstruction loss of `target` given `source`, summed
/// over the |target| + 1 decoder steps (the last one predicts end of
/// sentence). If `grads` is non-null the gradient is added into it;
/// embedding gradients are skipped when the model's embeddings are frozen.
template <typename T>
double reconstruction_loss(const Seq2SeqModel<T>& m, std::span<const Vocabulary::Id> source,
                           std::span<const Vocabulary::Id> target, Seq2SeqParams<T>* grads,
                           Seq2SeqWorkspace<T>& ws) {
  if (target.empty()) throw DataError("reconstruction target is empty");
  const auto& p = m.params;
  const std::size_t hd = m.hidden_dim(), n_out = p.out_w.rows();
  detail::run_encoder(m, source, ws);

  std::vector<T> zeros(hd, T(0));
  const std::size_t steps = target.size() + 1;
  ws.dec.resize(steps);
  ws.logits.resize(n_out);
  ws.dlogits.resize(n_out);
  double loss = 0.0;
  std::vector<std::vector<T>> probs_grad;
  if (grads) probs_grad.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    auto& st = ws.dec[t];
    st.token = t == 0 ? m.bos() : target[t - 1];
    std::span<const T> hp, cp;
    if (t > 0) {
      hp = ws.dec[t - 1].h;
      cp = ws.dec[t - 1].c;
    } else if (!ws.enc.empty()) {
      hp = ws.enc.back().h;
      cp = ws.enc.back().c;
    } else {
      hp = zeros;
      cp = zeros;
    }
    detail::lstm_forward(p.dec_w, p.dec_b, p.embeddings.row(st.token), hp, cp, st);
    for (std::size_t j = 0; j < n_out; ++j)
      ws.logits[j] = static_cast<T>(dot(p.out_w.row(j), st.h) + static_cast<double>(p.out_b(0, j)));
    const std::size_t y = t < target.size() ? target[t] : m.eos();
    loss += softmax_nll(std::span<const T>(ws.logits), y, std::span<T>(ws.dlogits));
    if (grads) probs_grad[t] = ws.dlogits;
  }
  if (!grads) return loss;

  auto& g = *grads;
  ws.touched.clear();
  auto add_embedding_grad = [&](std::size_t row) {
    if (m.frozen_embeddings) return;
    axpy(1.0, ws.dx, g.embeddings.row(row));
    ws.touched.push_back(row);
  };
  ws.dh.assign(hd, T(0));
  ws.dc.assign(hd, T(0));
  for (std::size_t t = steps; t-- > 0;) {
    const auto& st = ws.dec[t];
    const auto& dl = probs_grad[t];
    for (std::size_t j = 0; j < n_out; ++j) {
      const double gj = static_cast<double>(dl[j]);
      axpy(gj, st.h, g.out_w.row(j));
      g.out_b(0, j) += dl[j];
      axpy(gj, p.out_w.row(j), ws.dh);
    }
    detail::lstm_backward(p.dec_w, st, ws.dh, ws.dc, g.dec_w, g.dec_b, ws.dx, ws.dz);
    add_embedding_grad(st.token);
  }
  // dh/dc now hold the gradient w.r.t. the encoder's final state.
  for (std::size_t t = ws.enc.size(); t-- > 0;) {
    detail::lstm_backward(p.enc_w, ws.enc[t], ws.dh, ws.dc, g.enc_w, g.enc_b, ws.dx, ws.dz);
    add_embedding_grad(ws.enc[t].token);
  }
  std::sort(ws.touched.begin(), ws.touched.end());
  ws.touched.erase(std::unique(ws.touched.begin(), ws.touched.end()), ws.touched.end());
  return loss;
}

template <typename T>
double reconstruction_loss(const Seq2SeqModel<T>& m, std::span<const Vocabulary::Id> source,
                           std::span<const Vocabulary::Id> target, Seq2SeqParams<T>* grads = nullptr) {
  Seq2SeqWorkspace<T> ws;
  return reconstruction_loss(m, source, target, grads, ws);
}

/// Greedy reconstruction: feeds the decoder its own argmax until it emits
/// end of sentence or `max_len` tokens.
template <typename T>
std::vector<Vocabulary::Id> greedy_decode(const Seq2SeqModel<T>& m, std::span<const Vocabulary::Id> source,
                                          std::size_t max_len) {
  const auto& p = m.params;
  const std::size_t hd = m.hidden_dim();
  Seq2SeqWorkspace<T> ws;
  detail::run_encoder(m, source, ws);
  std::vector<T> h = ws.enc.empty() ? std::vector<T>(hd, T(0)) : ws.enc.back().h;
  std::vector<T> c = ws.enc.empty() ? std::vector<T>(hd, T(0)) : ws.enc.back().c;
  std::vector<Vocabulary::Id> out;
  std::size_t input = m.bos();
  detail::LstmStep<T> st;
  while (out.size() < max_len) {
    detail::lstm_forward(p.dec_w, p.dec_b, p.embeddings.row(input), std::span<const T>(h), std::span<const T>(c), st);
    h = st.h;
    c = st.c;
    std::size_t best = 0;
    double best_score = -INFINITY;
    for (std::size_t j = 0; j < p.out_w.rows(); ++j) {
      const double s = dot(p.out_w.row(j), h) + static_cast<double>(p.out_b(0, j));
      if (s > best_score) {
        best_score = s;
        best = j;
      }
    }
    if (best == m.eos()) break;
    out.push_back(static_cast<Vocabulary::Id>(best));
    input = best;
  }
  return out;
}

namespace detail {

/// Zeroes gradient blocks; for the embedding table only the rows touched
/// by the previous example.
template <typename T>
void reset_grads(Seq2SeqParams<T>& g, const std::vector<std::size_t>& touched) {
  for (auto r : touched) std::fill(g.embeddings.row(r).begin(), g.embeddings.row(r).end(), T(0));
  for (auto* b : {&g.enc_w, &g.enc_b, &g.dec_w, &g.dec_b, &g.out_w, &g.out_b}) b->fill(T(0));
}

template <typename T>
double grad_norm(const Seq2SeqParams<T>& g, const std::vector<std::size_t>& touched) {
  double s = 0.0;
  for (auto r : touched) s += squared_norm(g.embeddings.row(r));
  for (const auto* b : {&g.enc_w, &g.enc_b, &g.dec_w, &g.dec_b, &g.out_w, &g.out_b}) s += squared_norm(b->values());
  return std::sqrt(s);
}

}  // namespace detail

/// SGD over (corrupt(S), S) pairs with fresh noise for every example, global
/// gradient-norm clipping at cfg.clip_norm and linear learning-rate decay.
/// Sentences are visited in the given order; no document structure is used.
template <typename T>
TrainingReport train(Seq2SeqModel<T>& model, const std::vector<std::vector<Vocabulary::Id>>& sentences) {
  const auto& cfg = model.cfg;
  cfg.validate();
  if (sentences.empty()) throw DataError("empty corpus");
  const std::size_t planned = sentences.size() * cfg.train.epochs;
  LossTracker tracker(planned, cfg.train.report_every);
  Rng rng(cfg.train.seed ^ 0x5dae5dae5daeULL);
  Seq2SeqWorkspace<T> ws;
  auto grads = model.params.zeros_like();
  std::vector<std::size_t> prev_touched;
  Stopwatch clock;
  std::size_t processed = 0;
  for (std::size_t epoch = 0; epoch < cfg.train.epochs; ++epoch) {
    for (const auto& s : sentences) {
      const double lr = lr_at(static_cast<double>(processed++) / static_cast<double>(planned), cfg.train);
      if (s.empty()) {
        tracker.skip();
        continue;
      }
      const auto source = corrupt(s, cfg.noise, rng);
      detail::reset_grads(grads, prev_touched);
      const double loss = reconstruction_loss(model, std::span<const Vocabulary::Id>(source),
                                              std::span<const Vocabulary::Id>(s), &grads, ws);
      if (!std::isfinite(loss)) throw NumericError("SDAE loss diverged");
      tracker.add(loss);
      const double norm = detail::grad_norm(grads, ws.touched);
      const double step = norm > cfg.clip_norm ? lr * cfg.clip_norm / norm : lr;
      if (!model.frozen_embeddings) {
        for (auto r : ws.touched) axpy(-step, grads.embeddings.row(r), model.params.embeddings.row(r));
      }
      auto pb = model.params.blocks();
      auto gb = grads.blocks();
      for (std::size_t b = 1; b < pb.size(); ++b) axpy(-step, gb[b]->values(), pb[b]->values());
      prev_touched = ws.touched;
    }
  }
  return tracker.finish(clock.seconds());
}

/// Sentence-level ids of a corpus, document order.
inline std::vector<std::vector<Vocabulary::Id>> sentence_ids(const Corpus& corpus) {
  std::vector<std::vector<Vocabulary::Id>> out;
  out.reserve(corpus.sentence_count());
  for (const auto& d : corpus.documents)
    for (const auto& s : d) out.push_back(s.tokens);
  return out;
}

}  // namespace sentrep

#endif  // SENTREP_SDAE_HPP
