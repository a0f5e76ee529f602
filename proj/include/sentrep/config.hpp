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

#ifndef SENTREP_CONFIG_HPP
#define SENTREP_CONFIG_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "json.hpp"
#include "sentrep/error.hpp"

namespace sentrep {

/// Vocabularies up to this size train with the exact softmax when
/// `negative_samples` is left on auto.
inline constexpr std::size_t kExactSoftmaxVocabLimit = 20000;
inline constexpr int kAutoNegativeSamples = -1;

struct TrainConfig {
  std::size_t dim = 100;
  std::size_t epochs = 1;
  double lr0 = 0.025;
  double lr_min = 1e-4;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  /// 0 = exact softmax, -1 = auto (exact up to kExactSoftmaxVocabLimit, 5 above).
  int negative_samples = kAutoNegativeSamples;
  /// word2vec-style frequent-word subsampling threshold; 0 disables.
  double subsample = 0.0;
  std::size_t window = 5;
  std::size_t min_count = 1;
  std::size_t max_vocab = 200000;
  /// Examples per TrainingReport loss window.
  std::size_t report_every = 10000;

  void validate() const {
    if (dim == 0) throw DataError("dim must be > 0");
    if (epochs < 1) throw DataError("epochs must be >= 1");
    if (!(lr_min > 0.0) || !(lr_min <= lr0)) throw DataError("need 0 < lr_min <= lr0");
    if (workers < 1) throw DataError("workers must be >= 1");
    if (negative_samples < kAutoNegativeSamples) throw DataError("negative_samples must be >= 0 (or -1 for auto)");
    if (subsample < 0.0) throw DataError("subsample must be >= 0");
    if (report_every == 0) throw DataError("report_every must be > 0");
  }

  /// Number of negatives to use for an output layer of `vocab_size` rows.
  std::size_t resolved_negatives(std::size_t vocab_size) const {
    if (negative_samples == kAutoNegativeSamples) return vocab_size <= kExactSoftmaxVocabLimit ? 0 : 5;
    return static_cast<std::size_t>(negative_samples);
  }

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

inline void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = nlohmann::json{{"dim", c.dim},
                     {"epochs", c.epochs},
                     {"lr0", c.lr0},
                     {"lr_min", c.lr_min},
                     {"seed", c.seed},
                     {"workers", c.workers},
                     {"negative_samples", c.negative_samples},
                     {"subsample", c.subsample},
                     {"window", c.window},
                     {"min_count", c.min_count},
                     {"max_vocab", c.max_vocab},
                     {"report_every", c.report_every}};
}

inline void from_json(const nlohmann::json& j, TrainConfig& c) {
  c.dim = j.at("dim").get<std::size_t>();
  c.epochs = j.at("epochs").get<std::size_t>();
  c.lr0 = j.at("lr0").get<double>();
  c.lr_min = j.at("lr_min").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.workers = j.at("workers").get<std::size_t>();
  c.negative_samples = j.at("negative_samples").get<int>();
  c.subsample = j.at("subsample").get<double>();
  c.window = j.at("window").get<std::size_t>();
  c.min_count = j.at("min_count").get<std::size_t>();
  c.max_vocab = j.at("max_vocab").get<std::size_t>();
  c.report_every = j.at("report_every").get<std::size_t>();
}

/// Linear decay from lr0 to lr_min over training; progress is clamped to [0, 1].
inline double lr_at(double progress, const TrainConfig& cfg) {
  progress = std::clamp(progress, 0.0, 1.0);
  return std::max(cfg.lr0 * (1.0 - progress), cfg.lr_min);
}

/// word2vec keep probability for a token of frequency `count` out of `total`.
inline double subsample_keep_prob(std::uint64_t count, std::uint64_t total, double threshold) {
  if (threshold <= 0.0 || count == 0) return 1.0;
  const double f = static_cast<double>(count) / (threshold * static_cast<double>(total));
  return std::min(1.0, (std::sqrt(f) + 1.0) / f);
}

struct TrainingReport {
  std::size_t examples = 0;
  std::size_t skipped = 0;
  /// Mean loss of each consecutive window of `report_every` examples.
  std::vector<double> window_loss;
  double first_decile_loss = 0.0;
  double last_decile_loss = 0.0;
  double wall_seconds = 0.0;
};

/// Accumulates per-example losses into a TrainingReport, given the planned
/// number of examples (used for decile boundaries).
class LossTracker {
 public:
  LossTracker(std::size_t planned, std::size_t window) : planned_(std::max<std::size_t>(planned, 1)), window_(window) {}

  void add(double loss) {
    const std::size_t i = seen_++;
    window_sum_ += loss;
    if (++window_n_ == window_) flush_window();
    if (i * 10 < planned_) {
      first_sum_ += loss;
      ++first_n_;
    }
    if (i * 10 >= planned_ * 9) {
      last_sum_ += loss;
      ++last_n_;
    }
  }

  void skip() { ++skipped_; }

  TrainingReport finish(double wall_seconds) {
    if (window_n_ > 0) flush_window();
    TrainingReport r;
    r.examples = seen_;
    r.skipped = skipped_;
    r.window_loss = std::move(windows_);
    r.first_decile_loss = first_n_ ? first_sum_ / static_cast<double>(first_n_) : 0.0;
    r.last_decile_loss = last_n_ ? last_sum_ / static_cast<double>(last_n_) : 0.0;
    r.wall_seconds = wall_seconds;
    return r;
  }

 private:
  void flush_window() {
    windows_.push_back(window_sum_ / static_cast<double>(window_n_));
    window_sum_ = 0.0;
    window_n_ = 0;
  }

  std::size_t planned_;
  std::size_t window_;
  std::size_t seen_ = 0, skipped_ = 0;
  double window_sum_ = 0.0;
  std::size_t window_n_ = 0;
  double first_sum_ = 0.0, last_sum_ = 0.0;
  std::size_t first_n_ = 0, last_n_ = 0;
  std::vector<double> windows_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace sentrep

#endif  // SENTREP_CONFIG_HPP
