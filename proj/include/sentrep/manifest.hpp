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

#ifndef SENTREP_MANIFEST_HPP
#define SENTREP_MANIFEST_HPP

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"
#include "sentrep/model_file.hpp"

namespace sentrep {

inline constexpr const char* kVersion = "sentrep 0.1.0";

/// Provenance record written next to every model file.
struct RunManifest {
  std::string command_line;
  nlohmann::json config;
  std::string corpus_checksum;  // CRC-32 of the corpus file, hex
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::string version = kVersion;

  nlohmann::json to_json() const {
    return {{"command_line", command_line}, {"config", config},        {"corpus_crc32", corpus_checksum},
            {"seed", seed},                 {"wall_seconds", wall_seconds}, {"version", version}};
  }
};

inline std::string file_checksum(const std::string& path) {
  const auto crc = crc32_of(read_file(path));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", crc);
  return buf;
}

inline std::string manifest_path(const std::string& model_path) { return model_path + ".manifest.json"; }

/// Writes the model and then its manifest.
inline void save_with_manifest(const std::string& path, const AnyModel& model, const RunManifest& manifest) {
  std::ofstream mf(manifest_path(path), std::ios::trunc);
  if (!mf) throw DataError("cannot write " + manifest_path(path));
  save_model(path, model);
  mf << manifest.to_json().dump(2) << '\n';
  if (!mf) throw DataError("write failed: " + manifest_path(path));
}

}  // namespace sentrep

#endif  // SENTREP_MANIFEST_HPP
