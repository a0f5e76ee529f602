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

#ifndef SENTREP_NOISE_HPP
#define SENTREP_NOISE_HPP

#include <span>
#include <utility>
#include <vector>

#include "sentrep/error.hpp"
#include "sentrep/rng.hpp"

namespace sentrep {

/// Word-deletion probability and bigram-swap probability. (0, 0) is the
/// identity.
struct NoiseParams {
  double p_delete = 0.1;
  double p_swap = 0.1;

  void validate() const {
    if (!(p_delete >= 0.0 && p_delete <= 1.0) || !(p_swap >= 0.0 && p_swap <= 1.0))
      throw DataError("noise probabilities must lie in [0, 1]");
  }

  bool identity() const { return p_delete == 0.0 && p_swap == 0.0; }

  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

/// Deletes each token independently with probability p_delete, then walks
/// the survivors left to right in non-overlapping pairs (1-2, 3-4, ...) and
/// swaps each pair with probability p_swap. An odd trailing token is never
/// swapped. The number of swaps performed is stored in `*swaps`.
template <typename Token>
std::vector<Token> corrupt(std::span<const Token> tokens, const NoiseParams& noise, Rng& rng,
                           std::size_t* swaps = nullptr) {
  noise.validate();
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!rng.bernoulli(noise.p_delete)) out.push_back(t);
  }
  std::size_t n_swaps = 0;
  for (std::size_t i = 0; i + 1 < out.size(); i += 2) {
    if (rng.bernoulli(noise.p_swap)) {
      std::swap(out[i], out[i + 1]);
      ++n_swaps;
    }
  }
  if (swaps != nullptr) *swaps = n_swaps;
  return out;
}

template <typename Token>
std::vector<Token> corrupt(const std::vector<Token>& tokens, const NoiseParams& noise, Rng& rng,
                           std::size_t* swaps = nullptr) {
  return corrupt(std::span<const Token>(tokens), noise, rng, swaps);
}

}  // namespace sentrep

#endif  // SENTREP_NOISE_HPP
