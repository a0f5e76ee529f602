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

// Plain-text embedding format: a "rows dim" header line, then one
// "token v1 v2 ... vdim" line per row.

#ifndef SENTREP_TEXT_EMBEDDINGS_HPP
#define SENTREP_TEXT_EMBEDDINGS_HPP

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentrep/corpus.hpp"
#include "sentrep/error.hpp"
#include "sentrep/matrix.hpp"

namespace sentrep {

struct TextEmbeddings {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<float>> vectors;
};

/// Shortest decimal form that round-trips the float.
inline std::string format_float(float v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
void write_text_embeddings(std::ostream& os, const Vocabulary& vocab, const Matrix<T>& rows) {
  os << vocab.size() << ' ' << rows.cols() << '\n';
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    os << vocab.token(static_cast<Vocabulary::Id>(i));
    for (T v : rows.row(i)) os << ' ' << format_float(static_cast<float>(v));
    os << '\n';
  }
}

inline TextEmbeddings read_text_embeddings(std::istream& is) {
  TextEmbeddings out;
  std::string line;
  std::size_t rows = 0;
  if (!std::getline(is, line)) throw DataError("embedding file: missing header");
  {
    std::istringstream hs(line);
    if (!(hs >> rows >> out.dim) || out.dim == 0) throw DataError("embedding file: bad header");
  }
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string token;
    ls >> token;
    std::vector<float> v(out.dim);
    for (auto& x : v) {
      if (!(ls >> x)) throw DataError("embedding file line " + std::to_string(lineno) + ": too few values");
    }
    out.vectors.emplace(std::move(token), std::move(v));
  }
  if (out.vectors.size() != rows) throw DataError("embedding file: row count does not match header");
  return out;
}

}  // namespace sentrep

#endif  // SENTREP_TEXT_EMBEDDINGS_HPP
