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

#ifndef SENTREP_MATRIX_HPP
#define SENTREP_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <span>
#include <type_traits>
#include <vector>

#include "sentrep/error.hpp"
#include "sentrep/rng.hpp"

namespace sentrep {

/// Dense row-major parameter matrix.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](T v) { return std::isfinite(v); });
  }

  template <typename U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    std::transform(data_.begin(), data_.end(), out.values().begin(), [](T v) { return static_cast<U>(v); });
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> uniform_matrix(std::size_t rows, std::size_t cols, double half_width, Rng& rng) {
  Matrix<T> m(rows, cols);
  for (auto& v : m.values()) v = static_cast<T>(rng.uniform(-half_width, half_width));
  return m;
}

/// Embedding initialization: i.i.d. uniform in [-0.5/dim, 0.5/dim].
template <typename T>
Matrix<T> init_matrix(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  if (rows == 0 || dim == 0) throw DataError("init_matrix: zero dimension");
  Rng rng(seed);
  return uniform_matrix<T>(rows, dim, 0.5 / static_cast<double>(dim), rng);
}

// Small vector kernels over contiguous ranges. Accumulation happens in double.

template <typename A, typename B>
double dot(const A& a, const B& b) {
  double s = 0.0;
  const std::size_t n = std::size(a);
  for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return s;
}

/// y += alpha * x
template <typename X, typename Y>
void axpy(double alpha, const X& x, Y&& y) {
  const std::size_t n = std::size(y);
  for (std::size_t i = 0; i < n; ++i) {
    using V = std::remove_cvref_t<decltype(y[i])>;
    y[i] += static_cast<V>(alpha * static_cast<double>(x[i]));
  }
}

template <typename A>
double squared_norm(const A& a) {
  return dot(a, a);
}

}  // namespace sentrep

#endif  // SENTREP_MATRIX_HPP
