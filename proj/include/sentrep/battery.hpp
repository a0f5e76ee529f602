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

// Runs every benchmark found in a dataset directory against a list of
// encoders and lays the results out as a model x benchmark CSV.
//
// Directory convention:
//   NAME.pairs.tsv                      relatedness pairs
//   NAME.clf.tsv                        classification, cross-validated
//   NAME.train.clf.tsv + NAME.test.clf.tsv   classification, predefined split

#ifndef SENTREP_BATTERY_HPP
#define SENTREP_BATTERY_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sentrep/eval.hpp"

namespace sentrep {

struct BenchmarkSpec {
  enum class Kind { relatedness, classification } kind;
  std::string name;
  std::filesystem::path path;                       // pairs file or CV file
  std::optional<std::filesystem::path> test_path;   // predefined split
};

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Benchmarks in `dir`, sorted by name.
inline std::vector<BenchmarkSpec> discover_benchmarks(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("not a dataset directory: " + dir.string());
  std::map<std::string, BenchmarkSpec> found;
  std::map<std::string, fs::path> train, test;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto file = entry.path().filename().string();
    auto stem = [&](const std::string& suffix) { return file.substr(0, file.size() - suffix.size()); };
    if (ends_with(file, ".pairs.tsv")) {
      found[stem(".pairs.tsv")] = {BenchmarkSpec::Kind::relatedness, stem(".pairs.tsv"), entry.path(), std::nullopt};
    } else if (ends_with(file, ".train.clf.tsv")) {
      train[stem(".train.clf.tsv")] = entry.path();
    } else if (ends_with(file, ".test.clf.tsv")) {
      test[stem(".test.clf.tsv")] = entry.path();
    } else if (ends_with(file, ".clf.tsv")) {
      found[stem(".clf.tsv")] = {BenchmarkSpec::Kind::classification, stem(".clf.tsv"), entry.path(), std::nullopt};
    }
  }
  for (const auto& [name, p] : train) {
    auto it = test.find(name);
    if (it == test.end()) continue;
    found[name] = {BenchmarkSpec::Kind::classification, name, p, it->second};
  }
  std::vector<BenchmarkSpec> out;
  for (auto& [_, spec] : found) out.push_back(std::move(spec));
  return out;
}

struct BatteryReport {
  std::vector<std::string> models;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;  // models x columns
  std::vector<std::string> warnings;

  std::string to_csv() const {
    std::ostringstream os;
    os << "model";
    for (const auto& c : columns) os << ',' << c;
    os << '\n';
    for (std::size_t i = 0; i < models.size(); ++i) {
      os << models[i];
      for (const auto& c : cells[i]) os << ',' << c;
      os << '\n';
    }
    return os.str();
  }
};

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// One row per encoder. Relatedness cells read "spearman/pearson",
/// classification cells "accuracy%" or "accuracy%/F1%" for binary pair tasks.
/// Benchmarks named in `expected` but absent from the directory become
/// warnings and are skipped.
inline BatteryReport run_battery(const std::vector<Encoder>& encoders, const std::filesystem::path& dataset_dir,
                                 const std::vector<std::string>& expected = {},
                                 const ClassificationOptions& clf_opt = {}, std::size_t workers = 1) {
  BatteryReport report;
  auto specs = discover_benchmarks(dataset_dir);
  for (const auto& name : expected) {
    const bool present = std::any_of(specs.begin(), specs.end(), [&](const auto& s) { return s.name == name; });
    if (!present) report.warnings.push_back("benchmark '" + name + "' not found in " + dataset_dir.string() + "; column skipped");
  }
  if (specs.empty()) report.warnings.push_back("no benchmarks found in " + dataset_dir.string());
  for (const auto& s : specs) report.columns.push_back(s.name);
  for (const auto& enc : encoders) {
    report.models.push_back(enc.name());
    std::vector<std::string> row;
    for (const auto& s : specs) {
      if (s.kind == BenchmarkSpec::Kind::relatedness) {
        auto in = open_input(s.path.string());
        const auto r = relatedness_eval(enc, read_pairs(in));
        for (const auto& w : r.warnings) report.warnings.push_back(enc.name() + "/" + s.name + ": " + w);
        row.push_back(fixed(r.spearman, 4) + "/" + fixed(r.pearson, 4));
      } else {
        auto in = open_input(s.path.string());
        auto ds = read_classification(in);
        if (s.test_path) {
          auto tin = open_input(s.test_path->string());
          ds = with_split(std::move(ds), read_classification(tin));
        }
        const auto r = classification_eval(enc, ds, clf_opt, workers);
        std::string cell = fixed(100.0 * r.accuracy, 2);
        if (r.f1) cell += "/" + fixed(100.0 * *r.f1, 2);
        row.push_back(cell);
      }
    }
    report.cells.push_back(std::move(row));
  }
  return report;
}

}  // namespace sentrep

#endif  // SENTREP_BATTERY_HPP
