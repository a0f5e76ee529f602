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

#ifndef SENTREP_SIMILARITY_HPP
#define SENTREP_SIMILARITY_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "sentrep/error.hpp"
#include "sentrep/matrix.hpp"

namespace sentrep {

/// Sparse weighted term vector, entries sorted by index, no duplicates.
struct SparseVector {
  std::uint32_t dim = 0;
  std::vector<std::pair<std::uint32_t, float>> entries;

  double squared_norm() const {
    double s = 0.0;
    for (const auto& [i, v] : entries) s += static_cast<double>(v) * v;
    return s;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

inline double dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += static_cast<double>(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

namespace detail {
inline double cosine_from(double ab, double aa, double bb, bool* zero_norm) {
  const bool zero = aa == 0.0 || bb == 0.0;
  if (zero_norm != nullptr) *zero_norm = zero;
  if (zero) return 0.0;
  const double c = ab / (std::sqrt(aa) * std::sqrt(bb));
  return std::clamp(c, -1.0, 1.0);
}
}  // namespace detail

/// Cosine similarity of two dense vectors. 0 (and `*zero_norm` set) if
/// either vector is zero.
template <typename A, typename B>
double cosine(const A& a, const B& b, bool* zero_norm = nullptr) {
  if (std::size(a) != std::size(b)) throw DataError("cosine: dimension mismatch");
  return detail::cosine_from(dot(a, b), squared_norm(a), squared_norm(b), zero_norm);
}

inline double cosine(const SparseVector& a, const SparseVector& b, bool* zero_norm = nullptr) {
  if (a.dim != b.dim) throw DataError("cosine: feature space mismatch");
  return detail::cosine_from(dot(a, b), a.squared_norm(), b.squared_norm(), zero_norm);
}

/// A sentence representation: dense vector or sparse term vector.
using Representation = std::variant<std::vector<float>, SparseVector>;

inline double cosine(const Representation& a, const Representation& b, bool* zero_norm = nullptr) {
  if (a.index() != b.index()) throw DataError("cosine: dense/sparse mismatch");
  if (const auto* da = std::get_if<std::vector<float>>(&a)) {
    return cosine(*da, std::get<std::vector<float>>(b), zero_norm);
  }
  return cosine(std::get<SparseVector>(a), std::get<SparseVector>(b), zero_norm);
}

inline bool is_zero(const Representation& r) {
  if (const auto* d = std::get_if<std::vector<float>>(&r)) {
    for (float v : *d)
      if (v != 0.0f) return false;
    return true;
  }
  return std::get<SparseVector>(r).squared_norm() == 0.0;
}

}  // namespace sentrep

#endif  // SENTREP_SIMILARITY_HPP
