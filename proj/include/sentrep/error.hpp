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

#ifndef SENTREP_ERROR_HPP
#define SENTREP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sentrep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or insufficient input data (empty corpus, bad TSV row, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values, zero variance where it is fatal, divergence.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Model file could not be decoded. Subclasses identify the failure mode.
class ModelFormatError : public DataError {
 public:
  using DataError::DataError;
};

class BadMagicError : public ModelFormatError {
 public:
  BadMagicError() : ModelFormatError("bad magic") {}
};

class VersionError : public ModelFormatError {
 public:
  explicit VersionError(unsigned found)
      : ModelFormatError("unsupported model version " + std::to_string(found)) {}
};

class TruncatedError : public ModelFormatError {
 public:
  TruncatedError() : ModelFormatError("truncated model file") {}
};

class ChecksumError : public ModelFormatError {
 public:
  ChecksumError() : ModelFormatError("checksum mismatch") {}
};

}  // namespace sentrep

#endif  // SENTREP_ERROR_HPP
