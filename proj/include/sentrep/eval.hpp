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

// Evaluation harness: relatedness correlation, cross-validated
// classification on frozen representations, and Cronbach's alpha over
// model x benchmark score tables.

#ifndef SENTREP_EVAL_HPP
#define SENTREP_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sentrep/correlation.hpp"
#include "sentrep/corpus.hpp"
#include "sentrep/encoder.hpp"
#include "sentrep/logreg.hpp"
#include "sentrep/matrix.hpp"
#include "sentrep/rng.hpp"
#include "sentrep/similarity.hpp"

namespace sentrep {

// ---------------------------------------------------------------- datasets

struct EvalPair {
  std::string s1, s2;
  double gold = 0.0;
};

inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || !std::isfinite(v)) throw DataError(what + ": not a number: '" + s + "'");
  while (*end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (*end != '\0') throw DataError(what + ": trailing characters in '" + s + "'");
  return v;
}

/// `sentence1<TAB>sentence2<TAB>gold` per line.
inline std::vector<EvalPair> read_pairs(std::istream& is) {
  std::vector<EvalPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    strip_cr(line);
    if (is_blank(line)) continue;
    auto f = split_tabs(line);
    if (f.size() != 3) throw DataError("pair file line " + std::to_string(lineno) + ": expected 3 tab-separated fields");
    out.push_back({f[0], f[1], parse_double(f[2], "pair file line " + std::to_string(lineno))});
  }
  return out;
}

struct LabeledSentence {
  std::string sentence;
  std::optional<std::string> second;  // pair tasks
  std::size_t label = 0;
};

struct ClassificationDataset {
  std::vector<LabeledSentence> items;
  /// Original label strings; label i is class_names[i].
  std::vector<std::string> class_names;
  /// Predefined split, if any: true marks test items.
  std::optional<std::vector<bool>> is_test;

  bool is_pair_task() const { return !items.empty() && items.front().second.has_value(); }
  std::size_t n_classes() const { return class_names.size(); }
};

namespace detail {
inline bool all_integers(const std::vector<std::string>& labels) {
  return std::all_of(labels.begin(), labels.end(), [](const std::string& s) {
    char* end = nullptr;
    std::strtol(s.c_str(), &end, 10);
    return !s.empty() && *end == '\0';
  });
}
}  // namespace detail

/// `label<TAB>sentence` or `label<TAB>s1<TAB>s2`. Class ids follow the
/// sorted label strings (numerically if every label is an integer), so for
/// 0/1 data the class named "1" is the positive class.
inline ClassificationDataset read_classification(std::istream& is) {
  std::vector<std::pair<std::string, LabeledSentence>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    strip_cr(line);
    if (is_blank(line)) continue;
    auto f = split_tabs(line);
    if (f.size() != 2 && f.size() != 3)
      throw DataError("classification file line " + std::to_string(lineno) + ": expected 2 or 3 fields");
    LabeledSentence item{f[1], f.size() == 3 ? std::optional<std::string>(f[2]) : std::nullopt, 0};
    if (!rows.empty() && rows.front().second.second.has_value() != item.second.has_value())
      throw DataError("classification file line " + std::to_string(lineno) + ": mixed single and pair rows");
    rows.emplace_back(f[0], std::move(item));
  }
  ClassificationDataset ds;
  for (const auto& r : rows) ds.class_names.push_back(r.first);
  std::sort(ds.class_names.begin(), ds.class_names.end());
  ds.class_names.erase(std::unique(ds.class_names.begin(), ds.class_names.end()), ds.class_names.end());
  if (detail::all_integers(ds.class_names)) {
    std::sort(ds.class_names.begin(), ds.class_names.end(),
              [](const std::string& a, const std::string& b) { return std::stol(a) < std::stol(b); });
  }
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < ds.class_names.size(); ++i) id[ds.class_names[i]] = i;
  for (auto& r : rows) {
    r.second.label = id.at(r.first);
    ds.items.push_back(std::move(r.second));
  }
  return ds;
}

/// Joins a predefined train and test file into one dataset with a split.
inline ClassificationDataset with_split(ClassificationDataset train, const ClassificationDataset& test) {
  std::vector<std::string> names = train.class_names;
  for (const auto& n : test.class_names)
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  std::sort(names.begin(), names.end());
  if (detail::all_integers(names))
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) { return std::stol(a) < std::stol(b); });
  auto remap = [&](const ClassificationDataset& d, LabeledSentence item) {
    item.label = static_cast<std::size_t>(
        std::find(names.begin(), names.end(), d.class_names[item.label]) - names.begin());
    return item;
  };
  ClassificationDataset out;
  out.class_names = names;
  out.is_test.emplace();
  for (auto& it : train.items) {
    out.items.push_back(remap(train, it));
    out.is_test->push_back(false);
  }
  for (const auto& it : test.items) {
    out.items.push_back(remap(test, it));
    out.is_test->push_back(true);
  }
  return out;
}

// -------------------------------------------------------------- relatedness

struct RelatednessResult {
  double spearman = 0.0;
  double pearson = 0.0;
  std::size_t pairs = 0;
  /// Pairs where a sentence encoded to the zero vector (similarity 0).
  std::size_t zero_vectors = 0;
  std::vector<std::string> warnings;
};

/// Correlates cos(encode(s1), encode(s2)) with the gold ratings. Never
/// touches model parameters.
inline RelatednessResult relatedness_eval(const Encoder& encoder, const std::vector<EvalPair>& pairs) {
  if (pairs.size() < 3) throw DataError("relatedness evaluation needs at least 3 pairs");
  std::vector<double> predicted, gold;
  predicted.reserve(pairs.size());
  gold.reserve(pairs.size());
  RelatednessResult r;
  r.pairs = pairs.size();
  for (const auto& p : pairs) {
    bool zero = false;
    predicted.push_back(cosine(encoder(p.s1), encoder(p.s2), &zero));
    gold.push_back(p.gold);
    if (zero) ++r.zero_vectors;
  }
  bool degenerate = false;
  r.spearman = spearman(predicted, gold, &degenerate);
  r.pearson = pearson(predicted, gold, &degenerate);
  if (degenerate) r.warnings.push_back("constant predictions or gold ratings; correlation reported as 0");
  if (r.zero_vectors > 0)
    r.warnings.push_back(std::to_string(r.zero_vectors) + " pairs contained a sentence with no known words");
  return r;
}

// ----------------------------------------------------------- classification

struct ClassificationOptions {
  std::size_t folds = 10;
  std::size_t inner_folds = 3;
  std::uint64_t seed = 13;
  std::vector<double> l2_grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0};
  LogRegOptions logreg;
  /// Class whose F1 is reported; none = no F1.
  std::optional<std::size_t> positive_class;
};

struct ClassificationResult {
  double accuracy = 0.0;
  std::optional<double> f1;
  std::vector<double> fold_accuracy;
  std::vector<double> chosen_l2;
};

/// Stratified fold id for every item: each class is shuffled with `seed`
/// and dealt round-robin, continuing where the previous class stopped.
inline std::vector<std::size_t> stratified_folds(std::span<const std::size_t> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw DataError("need at least 2 folds");
  if (labels.size() < k) throw DataError("fewer items than folds");
  std::map<std::size_t, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Rng rng(seed);
  std::vector<std::size_t> fold(labels.size());
  std::size_t next = 0;
  for (auto& [c, idx] : by_class) {
    rng.shuffle(idx.begin(), idx.end());
    for (auto i : idx) fold[i] = next++ % k;
  }
  return fold;
}

namespace detail {

inline Matrix<double> select_rows(const Matrix<double>& x, const std::vector<std::size_t>& rows) {
  Matrix<double> out(rows.size(), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(x.row(rows[i]).begin(), x.row(rows[i]).end(), out.row(i).begin());
  return out;
}

/// z-scores columns with statistics of `train`, applied to both matrices.
inline void standardize(Matrix<double>& train, Matrix<double>& test) {
  for (std::size_t j = 0; j < train.cols(); ++j) {
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < train.rows(); ++i) mean += train(i, j);
    mean /= static_cast<double>(train.rows());
    for (std::size_t i = 0; i < train.rows(); ++i) var += (train(i, j) - mean) * (train(i, j) - mean);
    var /= static_cast<double>(train.rows());
    const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
    for (std::size_t i = 0; i < train.rows(); ++i) train(i, j) = (train(i, j) - mean) / sd;
    for (std::size_t i = 0; i < test.rows(); ++i) test(i, j) = (test(i, j) - mean) / sd;
  }
}

inline void check_classes(const std::vector<std::size_t>& y) {
  if (y.empty() || std::all_of(y.begin(), y.end(), [&](std::size_t c) { return c == y.front(); }))
    throw DataError("a training fold contains a single class");
}

struct Counts {
  std::size_t correct = 0, total = 0, tp = 0, fp = 0, fn = 0;
};

inline Counts fit_and_score(Matrix<double> xtr, std::vector<std::size_t> ytr, Matrix<double> xte,
                            const std::vector<std::size_t>& yte, double l2, const ClassificationOptions& opt) {
  check_classes(ytr);
  standardize(xtr, xte);
  LogRegOptions lo = opt.logreg;
  lo.l2 = l2;
  const auto fit = train_logreg(xtr, ytr, lo);
  Counts c;
  for (std::size_t i = 0; i < xte.rows(); ++i) {
    const auto pred = fit.model.predict(xte.row(i));
    c.correct += pred == yte[i];
    ++c.total;
    if (opt.positive_class) {
      const bool p = pred == *opt.positive_class, t = yte[i] == *opt.positive_class;
      c.tp += p && t;
      c.fp += p && !t;
      c.fn += !p && t;
    }
  }
  return c;
}

/// l2 with the best mean inner-CV accuracy; earlier grid entries win ties.
inline double select_l2(const Matrix<double>& x, const std::vector<std::size_t>& y, const ClassificationOptions& opt) {
  if (opt.l2_grid.empty()) throw DataError("empty l2 grid");
  if (opt.l2_grid.size() == 1 || opt.inner_folds < 2) return opt.l2_grid.front();
  const auto fold = stratified_folds(y, opt.inner_folds, opt.seed + 1);
  double best_l2 = opt.l2_grid.front(), best_acc = -1.0;
  for (double l2 : opt.l2_grid) {
    std::size_t correct = 0, total = 0;
    for (std::size_t f = 0; f < opt.inner_folds; ++f) {
      std::vector<std::size_t> tr, te;
      for (std::size_t i = 0; i < y.size(); ++i) (fold[i] == f ? te : tr).push_back(i);
      std::vector<std::size_t> ytr, yte;
      for (auto i : tr) ytr.push_back(y[i]);
      for (auto i : te) yte.push_back(y[i]);
      const auto c = fit_and_score(select_rows(x, tr), ytr, select_rows(x, te), yte, l2, opt);
      correct += c.correct;
      total += c.total;
    }
    const double acc = static_cast<double>(correct) / static_cast<double>(total);
    if (acc > best_acc) {
      best_acc = acc;
      best_l2 = l2;
    }
  }
  return best_l2;
}

inline double f1_score(std::size_t tp, std::size_t fp, std::size_t fn) {
  if (tp == 0) return 0.0;
  const double p = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double r = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return 2.0 * p * r / (p + r);
}

}  // namespace detail

inline double f1_score(std::span<const std::size_t> predicted, std::span<const std::size_t> gold, std::size_t positive) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool p = predicted[i] == positive, t = gold[i] == positive;
    tp += p && t;
    fp += p && !t;
    fn += !p && t;
  }
  return detail::f1_score(tp, fp, fn);
}

/// Stratified k-fold cross-validation; accuracy is the mean over folds,
/// F1 is computed over the pooled out-of-fold predictions.
inline ClassificationResult cross_validate(const Matrix<double>& x, std::span<const std::size_t> labels,
                                           const ClassificationOptions& opt = {}) {
  if (x.rows() != labels.size()) throw DataError("feature/label count mismatch");
  const std::vector<std::size_t> y(labels.begin(), labels.end());
  const auto fold = stratified_folds(y, opt.folds, opt.seed);
  ClassificationResult r;
  detail::Counts pooled;
  for (std::size_t f = 0; f < opt.folds; ++f) {
    std::vector<std::size_t> tr, te, ytr, yte;
    for (std::size_t i = 0; i < y.size(); ++i) (fold[i] == f ? te : tr).push_back(i);
    for (auto i : tr) ytr.push_back(y[i]);
    for (auto i : te) yte.push_back(y[i]);
    auto xtr = detail::select_rows(x, tr);
    detail::check_classes(ytr);
    const double l2 = detail::select_l2(xtr, ytr, opt);
    const auto c = detail::fit_and_score(std::move(xtr), ytr, detail::select_rows(x, te), yte, l2, opt);
    r.fold_accuracy.push_back(static_cast<double>(c.correct) / static_cast<double>(c.total));
    r.chosen_l2.push_back(l2);
    pooled.tp += c.tp;
    pooled.fp += c.fp;
    pooled.fn += c.fn;
  }
  r.accuracy = std::accumulate(r.fold_accuracy.begin(), r.fold_accuracy.end(), 0.0) / static_cast<double>(opt.folds);
  if (opt.positive_class) r.f1 = detail::f1_score(pooled.tp, pooled.fp, pooled.fn);
  return r;
}

/// Single run on a predefined split; l2 chosen by inner CV on the train part.
inline ClassificationResult train_test_eval(const Matrix<double>& x, std::span<const std::size_t> labels,
                                            const std::vector<bool>& is_test, const ClassificationOptions& opt = {}) {
  std::vector<std::size_t> tr, te, ytr, yte;
  for (std::size_t i = 0; i < labels.size(); ++i) (is_test[i] ? te : tr).push_back(i);
  if (te.empty() || tr.empty()) throw DataError("predefined split has an empty side");
  for (auto i : tr) ytr.push_back(labels[i]);
  for (auto i : te) yte.push_back(labels[i]);
  auto xtr = detail::select_rows(x, tr);
  detail::check_classes(ytr);
  const double l2 = detail::select_l2(xtr, ytr, opt);
  const auto c = detail::fit_and_score(std::move(xtr), ytr, detail::select_rows(x, te), yte, l2, opt);
  ClassificationResult r;
  r.accuracy = static_cast<double>(c.correct) / static_cast<double>(c.total);
  r.fold_accuracy = {r.accuracy};
  r.chosen_l2 = {l2};
  if (opt.positive_class) r.f1 = detail::f1_score(c.tp, c.fp, c.fn);
  return r;
}

/// Dense feature rows for a dataset. Pair items become [u, v, u*v, |u-v|].
/// Sparse representations are densified over the feature ids that occur
/// anywhere in the dataset.
inline Matrix<double> featurize(const Encoder& encoder, const ClassificationDataset& ds, std::size_t workers = 1) {
  std::vector<std::string> sentences;
  for (const auto& it : ds.items) {
    sentences.push_back(it.sentence);
    if (it.second) sentences.push_back(*it.second);
  }
  const auto reps = encode_batch(encoder, sentences, workers);
  // Column map for the representation space.
  std::vector<std::uint32_t> sparse_cols;
  std::size_t dim = 0;
  if (!reps.empty() && std::holds_alternative<SparseVector>(reps.front())) {
    for (const auto& r : reps)
      for (const auto& [i, v] : std::get<SparseVector>(r).entries) sparse_cols.push_back(i);
    std::sort(sparse_cols.begin(), sparse_cols.end());
    sparse_cols.erase(std::unique(sparse_cols.begin(), sparse_cols.end()), sparse_cols.end());
    dim = sparse_cols.size();
  } else if (!reps.empty()) {
    dim = std::get<std::vector<float>>(reps.front()).size();
  }
  auto dense = [&](const Representation& r) {
    std::vector<double> v(dim, 0.0);
    if (const auto* d = std::get_if<std::vector<float>>(&r)) {
      if (d->size() != dim) throw DataError("encoder returned vectors of differing dimension");
      std::copy(d->begin(), d->end(), v.begin());
    } else {
      for (const auto& [i, x] : std::get<SparseVector>(r).entries)
        v[static_cast<std::size_t>(std::lower_bound(sparse_cols.begin(), sparse_cols.end(), i) - sparse_cols.begin())] = x;
    }
    return v;
  };
  const bool pair = ds.is_pair_task();
  Matrix<double> x(ds.items.size(), pair ? 4 * dim : dim);
  std::size_t k = 0;
  for (std::size_t i = 0; i < ds.items.size(); ++i) {
    auto row = x.row(i);
    const auto u = dense(reps[k++]);
    if (!pair) {
      std::copy(u.begin(), u.end(), row.begin());
      continue;
    }
    const auto v = dense(reps[k++]);
    for (std::size_t j = 0; j < dim; ++j) {
      row[j] = u[j];
      row[dim + j] = v[j];
      row[2 * dim + j] = u[j] * v[j];
      row[3 * dim + j] = std::abs(u[j] - v[j]);
    }
  }
  return x;
}

/// Featurizes with `encoder` and runs the dataset's predefined split or
/// stratified CV. Binary pair tasks report F1 for the last class.
inline ClassificationResult classification_eval(const Encoder& encoder, const ClassificationDataset& ds,
                                                ClassificationOptions opt = {}, std::size_t workers = 1) {
  if (ds.n_classes() < 2) throw DataError("classification dataset has fewer than two classes");
  const auto x = featurize(encoder, ds, workers);
  std::vector<std::size_t> y;
  for (const auto& it : ds.items) y.push_back(it.label);
  if (!opt.positive_class && ds.is_pair_task() && ds.n_classes() == 2) opt.positive_class = 1;
  if (ds.is_test) return train_test_eval(x, y, *ds.is_test, opt);
  return cross_validate(x, y, opt);
}

// -------------------------------------------------------------- consistency

enum class Cohort { supervised, unsupervised };

struct ScoreMatrix {
  std::vector<std::string> models;
  std::vector<std::string> benchmarks;
  std::vector<Cohort> cohorts;
  Matrix<double> values;  // models x benchmarks

  std::vector<std::size_t> columns_of(Cohort c) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < cohorts.size(); ++j)
      if (cohorts[j] == c) out.push_back(j);
    return out;
  }

  std::vector<std::size_t> all_columns() const {
    std::vector<std::size_t> out(benchmarks.size());
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
};

/// Cronbach's alpha over the chosen columns, population variances:
///   k/(k-1) * (1 - sum_j var(column j) / var(row sums))
inline double cronbach_alpha(const Matrix<double>& m, std::span<const std::size_t> columns) {
  const std::size_t k = columns.size(), n = m.rows();
  if (k < 2) throw DataError("cronbach_alpha: need at least 2 columns");
  if (n < 2) throw DataError("cronbach_alpha: need at least 2 rows");
  auto variance = [n](const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(n);
  };
  std::vector<double> totals(n, 0.0), col(n);
  double item_var = 0.0;
  for (auto j : columns) {
    if (j >= m.cols()) throw DataError("cronbach_alpha: column out of range");
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(m(i, j))) throw DataError("cronbach_alpha: missing or non-finite cell");
      col[i] = m(i, j);
      totals[i] += m(i, j);
    }
    item_var += variance(col);
  }
  const double total_var = variance(totals);
  if (total_var == 0.0) throw NumericError("cronbach_alpha: zero total variance");
  const double kd = static_cast<double>(k);
  return kd / (kd - 1.0) * (1.0 - item_var / total_var);
}

inline double cronbach_alpha(const Matrix<double>& m) {
  std::vector<std::size_t> cols(m.cols());
  std::iota(cols.begin(), cols.end(), 0);
  return cronbach_alpha(m, cols);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
  return s;
}

/// CSV: header `model,<benchmark>...`; a second row `cohort,<supervised|unsupervised>...`;
/// then one row per model. A cell is a number optionally followed by a
/// bracketed annotation, e.g. `74.3 [T3 r1 c1]`, which is ignored. Lines
/// starting with '#' are comments.
inline ScoreMatrix read_score_matrix(std::istream& is) {
  ScoreMatrix sm;
  std::string line;
  std::vector<std::vector<double>> rows;
  int stage = 0;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    strip_cr(line);
    if (is_blank(line) || line.front() == '#') continue;
    auto cells = split_csv(line);
    for (auto& c : cells) c = trim(c);
    const std::string where = "score matrix line " + std::to_string(lineno);
    if (stage == 0) {
      if (cells.size() < 3) throw DataError(where + ": need a model column and at least 2 benchmarks");
      sm.benchmarks.assign(cells.begin() + 1, cells.end());
      stage = 1;
    } else if (stage == 1) {
      if (cells.size() != sm.benchmarks.size() + 1 || cells[0] != "cohort")
        throw DataError(where + ": expected cohort row");
      for (std::size_t j = 1; j < cells.size(); ++j) {
        if (cells[j] == "supervised")
          sm.cohorts.push_back(Cohort::supervised);
        else if (cells[j] == "unsupervised")
          sm.cohorts.push_back(Cohort::unsupervised);
        else
          throw DataError(where + ": unknown cohort '" + cells[j] + "'");
      }
      stage = 2;
    } else {
      if (cells.size() != sm.benchmarks.size() + 1) throw DataError(where + ": wrong number of cells");
      sm.models.push_back(cells[0]);
      std::vector<double> row;
      for (std::size_t j = 1; j < cells.size(); ++j) {
        auto cell = cells[j];
        if (auto b = cell.find('['); b != std::string::npos) cell = trim(cell.substr(0, b));
        if (cell.empty()) throw DataError(where + ": missing cell for " + sm.benchmarks[j - 1]);
        row.push_back(parse_double(cell, where));
      }
      rows.push_back(std::move(row));
    }
  }
  if (stage < 2) throw DataError("score matrix: missing header or cohort row");
  sm.values = Matrix<double>(rows.size(), sm.benchmarks.size());
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), sm.values.row(i).begin());
  return sm;
}

struct ConsistencyReport {
  double supervised = 0.0;
  double unsupervised = 0.0;
  double combined = 0.0;
  /// Alpha of each benchmark's cohort with that benchmark left out.
  std::vector<double> leave_one_out;
};

inline ConsistencyReport consistency(const ScoreMatrix& sm) {
  ConsistencyReport r;
  const auto sup = sm.columns_of(Cohort::supervised), uns = sm.columns_of(Cohort::unsupervised);
  r.supervised = cronbach_alpha(sm.values, sup);
  r.unsupervised = cronbach_alpha(sm.values, uns);
  r.combined = cronbach_alpha(sm.values, sm.all_columns());
  for (std::size_t j = 0; j < sm.benchmarks.size(); ++j) {
    auto cols = sm.cohorts[j] == Cohort::supervised ? sup : uns;
    cols.erase(std::find(cols.begin(), cols.end(), j));
    r.leave_one_out.push_back(cols.size() >= 2 ? cronbach_alpha(sm.values, cols) : NAN);
  }
  return r;
}

}  // namespace sentrep

#endif  // SENTREP_EVAL_HPP
