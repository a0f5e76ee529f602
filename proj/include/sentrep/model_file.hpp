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

// Binary model file, little-endian:
//
//   "SRT1" | u8 kind | u32 version | u32 vocab size | u32 n_dims, u32 dims[n_dims]
//   | u32 config length, config JSON (UTF-8)
//   | u32 vocab entries, { u32 token length, token bytes, u64 count }*
//   | u32 n_blocks, { u32 rows, u32 cols, f32 values[rows*cols] }*
//   | u32 CRC-32 of every preceding byte

#ifndef SENTREP_MODEL_FILE_HPP
#define SENTREP_MODEL_FILE_HPP

#include <zlib.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sentrep/error.hpp"
#include "sentrep/fastsent.hpp"
#include "sentrep/sdae.hpp"
#include "sentrep/tfidf.hpp"
#include "sentrep/word2vec.hpp"

namespace sentrep {

inline constexpr std::string_view kModelMagic = "SRT1";
inline constexpr std::uint32_t kModelVersion = 1;

enum class ModelKind : std::uint8_t { fastsent = 1, sdae = 2, cbow = 3, skipgram = 4, tfidf = 5 };

inline const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::fastsent: return "fastsent";
    case ModelKind::sdae: return "sdae";
    case ModelKind::cbow: return "cbow";
    case ModelKind::skipgram: return "skipgram";
    case ModelKind::tfidf: return "tfidf";
  }
  return "unknown";
}

using AnyModel = std::variant<FastSentModel<float>, Seq2SeqModel<float>, WordEmbeddingModel<float>, TfidfModel>;

inline ModelKind kind_of(const AnyModel& m) {
  switch (m.index()) {
    case 0: return ModelKind::fastsent;
    case 1: return ModelKind::sdae;
    case 2:
      return std::get<WordEmbeddingModel<float>>(m).mode == EmbeddingMode::cbow ? ModelKind::cbow : ModelKind::skipgram;
    default: return ModelKind::tfidf;
  }
}

inline const Vocabulary& vocabulary_of(const AnyModel& m) {
  return std::visit(
      [](const auto& x) -> const Vocabulary& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, TfidfModel>)
          return x.features;
        else
          return x.vocab;
      },
      m);
}

inline std::uint32_t crc32_of(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

namespace detail {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void bytes(std::string_view s) { buf_.append(s); }
  void str(std::string_view s) {
    u32(checked32(s.size()));
    bytes(s);
  }
  void block(const Matrix<float>& m) {
    u32(checked32(m.rows()));
    u32(checked32(m.cols()));
    for (float v : m.values()) u32(std::bit_cast<std::uint32_t>(v));
  }
  std::string& buffer() { return buf_; }

  static std::uint32_t checked32(std::size_t n) {
    if (n > 0xffffffffULL) throw DataError("model component too large for format");
    return static_cast<std::uint32_t>(n);
  }

 private:
  std::string buf_;
};

struct Overrun {};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string str() { return std::string(bytes(u32())); }
  Matrix<float> block() {
    const std::size_t rows = u32(), cols = u32();
    need(rows * cols * 4);
    Matrix<float> m(rows, cols);
    for (auto& v : m.values()) v = std::bit_cast<float>(u32());
    return m;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (n > data_.size() - pos_) throw Overrun{};
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

inline void write_vocab(ByteWriter& w, const Vocabulary& v) {
  w.u32(ByteWriter::checked32(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    w.str(v.token(static_cast<Vocabulary::Id>(i)));
    w.u64(v.count(static_cast<Vocabulary::Id>(i)));
  }
}

/// Vocabulary entries are stored in id order; re-sorting keeps that order
/// because it already satisfies the (count desc, token asc) rule.
inline Vocabulary read_vocab(ByteReader& r) {
  const std::uint32_t n = r.u32();
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  entries.reserve(std::min<std::size_t>(n, r.remaining()));
  for (std::uint32_t i = 0; i < n; ++i) {
    auto tok = r.str();
    entries.emplace_back(std::move(tok), r.u64());
  }
  return Vocabulary::from_counts(std::move(entries));
}

struct Payload {
  std::vector<std::uint32_t> dims;
  nlohmann::json config;
  const Vocabulary* vocab;
  std::vector<const Matrix<float>*> blocks;
};

inline Payload payload_of(const AnyModel& model, Matrix<float>& scratch) {
  return std::visit(
      [&](const auto& m) -> Payload {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, FastSentModel<float>>) {
          return {{static_cast<std::uint32_t>(m.dim())},
                  {{"train", m.cfg}, {"autoencode", m.autoencode}},
                  &m.vocab,
                  {&m.source, &m.target}};
        } else if constexpr (std::is_same_v<M, Seq2SeqModel<float>>) {
          Payload p{{static_cast<std::uint32_t>(m.word_dim()), static_cast<std::uint32_t>(m.hidden_dim())},
                    {{"sdae", m.cfg}, {"frozen_embeddings", m.frozen_embeddings}},
                    &m.vocab,
                    {}};
          for (const auto* b : m.params.blocks()) p.blocks.push_back(b);
          return p;
        } else if constexpr (std::is_same_v<M, WordEmbeddingModel<float>>) {
          return {{static_cast<std::uint32_t>(m.dim())}, {{"train", m.cfg}}, &m.vocab, {&m.input, &m.output}};
        } else {
          scratch = Matrix<float>(1, m.idf.size());
          std::copy(m.idf.begin(), m.idf.end(), scratch.values().begin());
          return {{static_cast<std::uint32_t>(m.size())}, {{"n_sentences", m.n_sentences}}, &m.features, {&scratch}};
        }
      },
      model);
}

inline void expect_blocks(const std::vector<Matrix<float>>& blocks, std::size_t n) {
  if (blocks.size() != n) throw ModelFormatError("unexpected parameter block count");
}

inline AnyModel assemble(ModelKind kind, const std::vector<std::uint32_t>& dims, const nlohmann::json& cfg,
                         Vocabulary vocab, std::vector<Matrix<float>> blocks) {
  const std::size_t V = vocab.size();
  auto check = [](bool ok) {
    if (!ok) throw ModelFormatError("inconsistent parameter shapes");
  };
  switch (kind) {
    case ModelKind::fastsent: {
      expect_blocks(blocks, 2);
      FastSentModel<float> m;
      m.cfg = cfg.at("train").get<TrainConfig>();
      m.autoencode = cfg.at("autoencode").get<bool>();
      m.source = std::move(blocks[0]);
      m.target = std::move(blocks[1]);
      check(dims.size() == 1 && m.source.rows() == V && m.source.cols() == dims[0] &&
            m.target.rows() == V && m.target.cols() == dims[0]);
      m.vocab = std::move(vocab);
      return m;
    }
    case ModelKind::sdae: {
      expect_blocks(blocks, 7);
      Seq2SeqModel<float> m;
      m.cfg = cfg.at("sdae").get<SdaeConfig>();
      m.frozen_embeddings = cfg.at("frozen_embeddings").get<bool>();
      auto dst = m.params.blocks();
      for (std::size_t i = 0; i < dst.size(); ++i) *dst[i] = std::move(blocks[i]);
      check(dims.size() == 2);
      const std::size_t dw = dims[0], h = dims[1];
      const auto& p = m.params;
      check(p.embeddings.rows() == V + 1 && p.embeddings.cols() == dw && p.enc_w.rows() == 4 * h &&
            p.enc_w.cols() == dw + h && p.enc_b.rows() == 1 && p.enc_b.cols() == 4 * h && p.dec_w.rows() == 4 * h &&
            p.dec_w.cols() == dw + h && p.dec_b.rows() == 1 && p.dec_b.cols() == 4 * h && p.out_w.rows() == V + 1 &&
            p.out_w.cols() == h && p.out_b.rows() == 1 && p.out_b.cols() == V + 1);
      m.vocab = std::move(vocab);
      return m;
    }
    case ModelKind::cbow:
    case ModelKind::skipgram: {
      expect_blocks(blocks, 2);
      WordEmbeddingModel<float> m;
      m.mode = kind == ModelKind::cbow ? EmbeddingMode::cbow : EmbeddingMode::skipgram;
      m.cfg = cfg.at("train").get<TrainConfig>();
      m.input = std::move(blocks[0]);
      m.output = std::move(blocks[1]);
      check(dims.size() == 1 && m.input.rows() == V && m.input.cols() == dims[0] && m.output.rows() == V &&
            m.output.cols() == dims[0]);
      m.vocab = std::move(vocab);
      return m;
    }
    case ModelKind::tfidf: {
      expect_blocks(blocks, 1);
      TfidfModel m;
      m.n_sentences = cfg.at("n_sentences").get<std::uint64_t>();
      check(dims.size() == 1 && dims[0] == V && blocks[0].rows() == 1 && blocks[0].cols() == V);
      m.idf.assign(blocks[0].values().begin(), blocks[0].values().end());
      m.features = std::move(vocab);
      return m;
    }
  }
  throw ModelFormatError("unknown model kind");
}

}  // namespace detail

inline std::string serialize_model(const AnyModel& model) {
  Matrix<float> scratch;
  const auto p = detail::payload_of(model, scratch);
  detail::ByteWriter w;
  w.bytes(kModelMagic);
  w.u8(static_cast<std::uint8_t>(kind_of(model)));
  w.u32(kModelVersion);
  w.u32(detail::ByteWriter::checked32(p.vocab->size()));
  w.u32(detail::ByteWriter::checked32(p.dims.size()));
  for (auto d : p.dims) w.u32(d);
  w.str(p.config.dump());
  detail::write_vocab(w, *p.vocab);
  w.u32(detail::ByteWriter::checked32(p.blocks.size()));
  for (const auto* b : p.blocks) w.block(*b);
  const auto crc = crc32_of(w.buffer());
  w.u32(crc);
  return std::move(w.buffer());
}

inline AnyModel deserialize_model(std::string_view data) {
  if (data.size() < kModelMagic.size() || data.substr(0, kModelMagic.size()) != kModelMagic) throw BadMagicError();
  auto parse = [&]() -> AnyModel {
    detail::ByteReader r(data.substr(0, data.size() >= 4 ? data.size() - 4 : 0));
    r.bytes(kModelMagic.size());
    const auto kind_byte = r.u8();
    const auto version = r.u32();
    if (version != kModelVersion) throw VersionError(version);
    if (kind_byte < 1 || kind_byte > 5) throw ModelFormatError("unknown model kind " + std::to_string(kind_byte));
    const auto kind = static_cast<ModelKind>(kind_byte);
    const std::uint32_t vocab_size = r.u32();
    std::vector<std::uint32_t> dims(r.u32());
    if (dims.size() > 16) throw ModelFormatError("implausible dimension count");
    for (auto& d : dims) d = r.u32();
    nlohmann::json cfg;
    try {
      cfg = nlohmann::json::parse(r.str());
    } catch (const nlohmann::json::exception&) {
      throw ModelFormatError("malformed config block");
    }
    auto vocab = detail::read_vocab(r);
    if (vocab.size() != vocab_size) throw ModelFormatError("vocabulary size mismatch");
    const std::uint32_t n_blocks = r.u32();
    if (n_blocks > 64) throw ModelFormatError("implausible block count");
    std::vector<Matrix<float>> blocks;
    for (std::uint32_t i = 0; i < n_blocks; ++i) blocks.push_back(r.block());
    if (r.remaining() != 0) throw ModelFormatError("trailing bytes after parameter blocks");
    try {
      return detail::assemble(kind, dims, cfg, std::move(vocab), std::move(blocks));
    } catch (const nlohmann::json::exception&) {
      throw ModelFormatError("malformed config block");
    }
  };
  // Version is checked before the checksum so that files from a future
  // format are reported as such.
  if (data.size() >= kModelMagic.size() + 5) {
    detail::ByteReader h(data.substr(kModelMagic.size() + 1, 4));
    const auto version = h.u32();
    if (version != kModelVersion) throw VersionError(version);
  }
  const bool crc_ok = data.size() >= kModelMagic.size() + 4 &&
                      crc32_of(data.substr(0, data.size() - 4)) ==
                          detail::ByteReader(data.substr(data.size() - 4)).u32();
  try {
    auto model = parse();
    if (!crc_ok) throw ChecksumError();
    return model;
  } catch (const detail::Overrun&) {
    throw TruncatedError();
  } catch (const ModelFormatError&) {
    if (!crc_ok) throw ChecksumError();
    throw;
  } catch (const DataError&) {
    if (!crc_ok) throw ChecksumError();
    throw ModelFormatError("invalid vocabulary block");
  }
}

inline void save_model(const std::string& path, const AnyModel& model) {
  const auto bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline AnyModel load_model(const std::string& path) { return deserialize_model(read_file(path)); }

}  // namespace sentrep

#endif  // SENTREP_MODEL_FILE_HPP
