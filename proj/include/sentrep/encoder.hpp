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

#ifndef SENTREP_ENCODER_HPP
#define SENTREP_ENCODER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sentrep/model_file.hpp"
#include "sentrep/parallel.hpp"
#include "sentrep/similarity.hpp"

namespace sentrep {

/// Anything that maps a raw sentence to a representation. Evaluation code
/// depends only on this.
class Encoder {
 public:
  using Fn = std::function<Representation(const std::string&)>;

  Encoder(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  Representation operator()(const std::string& sentence) const { return fn_(sentence); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

inline Representation encode_any(const AnyModel& model, const std::string& sentence) {
  return std::visit(
      [&](const auto& m) -> Representation {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, TfidfModel>) {
          return tfidf_encode(m, sentence).vector;
        } else if constexpr (std::is_same_v<M, WordEmbeddingModel<float>>) {
          return compose_additive(m, sentence).values;
        } else {
          return encode(m, sentence).values;
        }
      },
      model);
}

inline Encoder make_encoder(std::shared_ptr<const AnyModel> model, std::string name) {
  return Encoder(std::move(name), [model](const std::string& s) { return encode_any(*model, s); });
}

/// Encodes every line, preserving order. Read-only over the model, so
/// shards run in parallel.
inline std::vector<Representation> encode_batch(const Encoder& enc, const std::vector<std::string>& sentences,
                                                std::size_t workers = 1) {
  std::vector<Representation> out(sentences.size());
  parallel_for(sentences.size(), workers, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) out[i] = enc(sentences[i]);
  });
  return out;
}

namespace detail {
inline void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>(v >> (8 * i));
  os.write(b, 4);
}
inline void put_f32(std::ostream& os, float v) { put_u32(os, std::bit_cast<std::uint32_t>(v)); }
}  // namespace detail

/// Dense: u32 count, u32 dim, then count rows of dim f32.
/// Sparse: u32 count, u32 dim, then per vector u32 nnz and nnz (u32 index, f32 value) pairs.
/// All little-endian. The kind of the first vector decides the layout.
inline void write_vectors(std::ostream& os, const std::vector<Representation>& reps) {
  if (reps.empty()) {
    detail::put_u32(os, 0);
    detail::put_u32(os, 0);
    return;
  }
  const bool dense = std::holds_alternative<std::vector<float>>(reps.front());
  const std::uint32_t dim = dense ? static_cast<std::uint32_t>(std::get<std::vector<float>>(reps.front()).size())
                                  : std::get<SparseVector>(reps.front()).dim;
  detail::put_u32(os, static_cast<std::uint32_t>(reps.size()));
  detail::put_u32(os, dim);
  for (const auto& r : reps) {
    if (dense) {
      for (float v : std::get<std::vector<float>>(r)) detail::put_f32(os, v);
    } else {
      const auto& sv = std::get<SparseVector>(r);
      detail::put_u32(os, static_cast<std::uint32_t>(sv.entries.size()));
      for (const auto& [i, v] : sv.entries) {
        detail::put_u32(os, i);
        detail::put_f32(os, v);
      }
    }
  }
}

/// Reads the dense layout written by write_vectors.
inline Matrix<float> read_dense_vectors(std::istream& is) {
  auto get_u32 = [&] {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw DataError("vector file truncated");
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
  };
  const std::uint32_t n = get_u32(), d = get_u32();
  Matrix<float> m(n, d);
  for (auto& v : m.values()) v = std::bit_cast<float>(get_u32());
  return m;
}

}  // namespace sentrep

#endif  // SENTREP_ENCODER_HPP
