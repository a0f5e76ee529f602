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

#ifndef SENTREP_SENTREP_HPP
#define SENTREP_SENTREP_HPP

#include "sentrep/battery.hpp"
#include "sentrep/config.hpp"
#include "sentrep/correlation.hpp"
#include "sentrep/corpus.hpp"
#include "sentrep/encoder.hpp"
#include "sentrep/error.hpp"
#include "sentrep/eval.hpp"
#include "sentrep/fastsent.hpp"
#include "sentrep/logreg.hpp"
#include "sentrep/loss.hpp"
#include "sentrep/manifest.hpp"
#include "sentrep/matrix.hpp"
#include "sentrep/model_file.hpp"
#include "sentrep/nn_index.hpp"
#include "sentrep/noise.hpp"
#include "sentrep/rng.hpp"
#include "sentrep/sdae.hpp"
#include "sentrep/similarity.hpp"
#include "sentrep/text_embeddings.hpp"
#include "sentrep/tfidf.hpp"
#include "sentrep/word2vec.hpp"

#endif  // SENTREP_SENTREP_HPP
