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

// Multinomial logistic regression with an L2 penalty on the weights (the
// per-class bias is not penalized), fit with L-BFGS.

#ifndef SENTREP_LOGREG_HPP
#define SENTREP_LOGREG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "sentrep/error.hpp"
#include "sentrep/loss.hpp"
#include "sentrep/matrix.hpp"
#include "sentrep/rng.hpp"

namespace sentrep {

struct LogRegOptions {
  double l2 = 1e-4;
  std::size_t max_iters = 2000;
  double grad_tol = 1e-5;
  std::size_t history = 10;
  /// 0 starts from zero weights; anything else from small random weights.
  std::uint64_t init_seed = 0;
};

class LogisticRegression {
 public:
  LogisticRegression() = default;
  LogisticRegression(std::size_t n_classes, std::size_t n_features)
      : n_classes_(n_classes), n_features_(n_features), params_(n_classes * (n_features + 1), 0.0) {}

  std::size_t n_classes() const { return n_classes_; }
  std::size_t n_features() const { return n_features_; }

  /// Row c holds the weights of class c followed by its bias.
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  double score(std::size_t c, std::span<const double> x) const {
    const double* w = params_.data() + c * (n_features_ + 1);
    double s = w[n_features_];
    for (std::size_t j = 0; j < n_features_; ++j) s += w[j] * x[j];
    return s;
  }

  std::size_t predict(std::span<const double> x) const {
    std::size_t best = 0;
    double best_s = score(0, x);
    for (std::size_t c = 1; c < n_classes_; ++c) {
      const double s = score(c, x);
      if (s > best_s) {
        best_s = s;
        best = c;
      }
    }
    return best;
  }

  double weight_norm() const {
    double s = 0.0;
    for (std::size_t c = 0; c < n_classes_; ++c)
      for (std::size_t j = 0; j < n_features_; ++j) s += params_[c * (n_features_ + 1) + j] * params_[c * (n_features_ + 1) + j];
    return std::sqrt(s);
  }

 private:
  std::size_t n_classes_ = 0;
  std::size_t n_features_ = 0;
  std::vector<double> params_;
};

struct LogRegFit {
  LogisticRegression model;
  double objective = 0.0;
  double grad_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Mean negative log-likelihood plus (l2/2)||W||^2 and its gradient.
inline double logreg_objective(const LogisticRegression& m, const Matrix<double>& x, std::span<const std::size_t> y,
                               double l2, std::span<double> grad) {
  const std::size_t C = m.n_classes(), F = m.n_features(), n = x.rows();
  std::fill(grad.begin(), grad.end(), 0.0);
  std::vector<double> scores(C);
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = x.row(i);
    for (std::size_t c = 0; c < C; ++c) scores[c] = m.score(c, xi);
    const double target_score = scores[y[i]];
    const double lse = softmax_in_place(std::span<double>(scores));
    loss += lse - target_score;
    scores[y[i]] -= 1.0;
    for (std::size_t c = 0; c < C; ++c) {
      const double g = scores[c] * inv_n;
      double* gw = grad.data() + c * (F + 1);
      for (std::size_t j = 0; j < F; ++j) gw[j] += g * xi[j];
      gw[F] += g;
    }
  }
  loss *= inv_n;
  const auto p = m.params();
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t j = 0; j < F; ++j) {
      const double w = p[c * (F + 1) + j];
      loss += 0.5 * l2 * w * w;
      grad[c * (F + 1) + j] += l2 * w;
    }
  return loss;
}

/// Fits until the gradient norm drops below grad_tol or max_iters is reached.
/// Labels must be dense in [0, C) with at least two classes present.
inline LogRegFit train_logreg(const Matrix<double>& x, std::span<const std::size_t> y, const LogRegOptions& opt = {}) {
  if (x.rows() != y.size()) throw DataError("logreg: feature/label count mismatch");
  if (x.rows() == 0) throw DataError("logreg: no training data");
  if (opt.l2 < 0.0) throw DataError("logreg: l2 must be >= 0");
  const std::size_t C = *std::max_element(y.begin(), y.end()) + 1;
  {
    std::vector<bool> seen(C, false);
    std::size_t distinct = 0;
    for (auto c : y)
      if (!seen[c]) {
        seen[c] = true;
        ++distinct;
      }
    if (distinct < 2) throw DataError("logreg: need at least two classes");
  }
  LogRegFit fit;
  fit.model = LogisticRegression(C, x.cols());
  auto w = fit.model.params();
  if (opt.init_seed != 0) {
    Rng rng(opt.init_seed);
    for (auto& v : w) v = rng.uniform(-0.1, 0.1);
  }
  const std::size_t P = w.size();
  std::vector<double> g(P), g_new(P), dir(P), w_old(P);
  double f = logreg_objective(fit.model, x, y, opt.l2, g);
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> alpha(opt.history);

  for (std::size_t it = 0; it < opt.max_iters; ++it) {
    fit.grad_norm = std::sqrt(squared_norm(g));
    if (fit.grad_norm < opt.grad_tol) {
      fit.converged = true;
      break;
    }
    // Two-loop recursion.
    for (std::size_t i = 0; i < P; ++i) dir[i] = -g[i];
    const std::size_t k = s_hist.size();
    for (std::size_t i = k; i-- > 0;) {
      alpha[i] = rho_hist[i] * dot(s_hist[i], dir);
      axpy(-alpha[i], y_hist[i], dir);
    }
    if (k > 0) {
      const double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (auto& v : dir) v *= gamma;
    } else {
      const double scale = 1.0 / std::max(1.0, fit.grad_norm);
      for (auto& v : dir) v *= scale;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const double beta = rho_hist[i] * dot(y_hist[i], dir);
      axpy(alpha[i] - beta, s_hist[i], dir);
    }
    double slope = dot(g, dir);
    if (!(slope < 0.0)) {
      // Not a descent direction: reset to steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < P; ++i) dir[i] = -g[i] / std::max(1.0, fit.grad_norm);
      slope = dot(g, dir);
    }
    // Backtracking Armijo line search.
    std::copy(w.begin(), w.end(), w_old.begin());
    double step = 1.0, f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < P; ++i) w[i] = w_old[i] + step * dir[i];
      f_new = logreg_objective(fit.model, x, y, opt.l2, g_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    fit.iterations = it + 1;
    if (!accepted) {
      std::copy(w_old.begin(), w_old.end(), w.begin());
      break;
    }
    std::vector<double> s(P), yv(P);
    for (std::size_t i = 0; i < P; ++i) {
      s[i] = w[i] - w_old[i];
      yv[i] = g_new[i] - g[i];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-12) {
      if (s_hist.size() == opt.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
      rho_hist.push_back(1.0 / sy);
    }
    f = f_new;
    g.swap(g_new);
  }
  fit.objective = logreg_objective(fit.model, x, y, opt.l2, g);
  fit.grad_norm = std::sqrt(squared_norm(g));
  fit.converged = fit.converged || fit.grad_norm < opt.grad_tol;
  if (!std::isfinite(fit.objective)) throw NumericError("logreg diverged");
  return fit;
}

}  // namespace sentrep

#endif  // SENTREP_LOGREG_HPP
