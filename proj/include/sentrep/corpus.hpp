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

// Corpus ingestion: tokenization, vocabularies, documents and the
// consecutive-sentence windows consumed by context objectives.
//
// File format: UTF-8, one sentence per line, a blank line ends a document.

#ifndef SENTREP_CORPUS_HPP
#define SENTREP_CORPUS_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <ranges>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sentrep/error.hpp"

namespace sentrep {

/// Lowercases ASCII letters, splits ASCII punctuation into standalone tokens
/// and splits on whitespace. Bytes >= 0x80 are kept verbatim so multi-byte
/// UTF-8 sequences survive inside tokens.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::isspace(c)) {
      flush();
    } else if (c < 0x80 && std::ispunct(c)) {
      flush();
      out.emplace_back(1, ch);
    } else {
      cur.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    }
  }
  flush();
  return out;
}

inline bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

inline void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

/// Token <-> id map. Ids are dense and ordered by descending corpus
/// frequency, ties broken lexicographically. There is no UNK entry.
class Vocabulary {
 public:
  using Id = std::uint32_t;

  Vocabulary() = default;

  /// Builds from (token, count) pairs in any order.
  static Vocabulary from_counts(std::vector<std::pair<std::string, std::uint64_t>> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    Vocabulary v;
    v.tokens_.reserve(entries.size());
    v.counts_.reserve(entries.size());
    for (auto& [tok, n] : entries) {
      if (v.index_.count(tok) != 0) throw DataError("duplicate vocabulary token: " + tok);
      v.index_.emplace(tok, static_cast<Id>(v.tokens_.size()));
      v.tokens_.push_back(std::move(tok));
      v.counts_.push_back(n);
    }
    return v;
  }

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  std::optional<Id> find(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& token(Id id) const { return tokens_.at(id); }
  std::uint64_t count(Id id) const { return counts_.at(id); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  /// Maps tokens to ids, silently dropping out-of-vocabulary tokens.
  std::vector<Id> lookup(const std::vector<std::string>& tokens) const {
    std::vector<Id> ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) {
      if (auto id = find(t)) ids.push_back(*id);
    }
    return ids;
  }

  /// `token<TAB>count` per line, id order.
  void write(std::ostream& os) const {
    for (std::size_t i = 0; i < tokens_.size(); ++i) os << tokens_[i] << '\t' << counts_[i] << '\n';
  }

  static Vocabulary read(std::istream& is) {
    std::vector<std::pair<std::string, std::uint64_t>> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      strip_cr(line);
      if (line.empty()) continue;
      const auto tab = line.rfind('\t');
      if (tab == std::string::npos || tab == 0)
        throw DataError("vocabulary line " + std::to_string(lineno) + ": expected token<TAB>count");
      try {
        std::size_t used = 0;
        const auto n = std::stoull(line.substr(tab + 1), &used);
        if (used != line.size() - tab - 1) throw std::invalid_argument("trailing");
        entries.emplace_back(line.substr(0, tab), n);
      } catch (const std::logic_error&) {
        throw DataError("vocabulary line " + std::to_string(lineno) + ": bad count");
      }
    }
    return from_counts(std::move(entries));
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.counts_ == b.counts_;
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, Id> index_;
};

/// Streaming token counter; feed sentences, then `finish`.
class VocabularyBuilder {
 public:
  void add(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) ++counts_[t];
    total_ += tokens.size();
  }

  std::uint64_t total_tokens() const { return total_; }

  Vocabulary finish(std::uint64_t min_count, std::size_t max_size) const {
    if (min_count < 1) throw DataError("min_count must be >= 1");
    if (max_size < 1) throw DataError("max_size must be >= 1");
    if (total_ == 0) throw DataError("empty corpus");
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (const auto& [tok, n] : counts_) {
      if (n >= min_count) kept.emplace_back(tok, n);
    }
    auto by_freq = [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    };
    if (kept.size() > max_size) {
      std::nth_element(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(max_size), kept.end(), by_freq);
      kept.resize(max_size);
    }
    return Vocabulary::from_counts(std::move(kept));
  }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Builds a vocabulary from any range of token sequences.
template <std::ranges::input_range R>
Vocabulary build_vocab(R&& sentences, std::uint64_t min_count, std::size_t max_size) {
  VocabularyBuilder b;
  for (const auto& s : sentences) b.add(s);
  return b.finish(min_count, max_size);
}

/// Builds a vocabulary from a corpus stream (blank lines ignored).
inline Vocabulary build_vocab(std::istream& corpus, std::uint64_t min_count, std::size_t max_size) {
  VocabularyBuilder b;
  std::string line;
  while (std::getline(corpus, line)) {
    strip_cr(line);
    if (!is_blank(line)) b.add(tokenize(line));
  }
  return b.finish(min_count, max_size);
}

struct Sentence {
  std::vector<Vocabulary::Id> tokens;
  std::string raw;
};

using Document = std::vector<Sentence>;

/// Three consecutive sentences of one document.
struct SentenceTriple {
  const Sentence* prev;
  const Sentence* mid;
  const Sentence* next;
};

/// In-memory corpus. Sentences whose tokens are all out of vocabulary stay
/// in place (empty `tokens`) so document adjacency is preserved; trainers
/// skip them and count the skip.
struct Corpus {
  std::vector<Document> documents;

  std::size_t sentence_count() const {
    std::size_t n = 0;
    for (const auto& d : documents) n += d.size();
    return n;
  }

  std::size_t triple_count() const {
    std::size_t n = 0;
    for (const auto& d : documents) n += d.size() >= 3 ? d.size() - 2 : 0;
    return n;
  }

  /// Every sentence, document order.
  std::vector<const Sentence*> sentences() const {
    std::vector<const Sentence*> out;
    out.reserve(sentence_count());
    for (const auto& d : documents)
      for (const auto& s : d) out.push_back(&s);
    return out;
  }
};

/// Reads the next document (raw lines) from a corpus stream. Consecutive
/// blank lines collapse. Returns false at end of stream with nothing read.
inline bool read_document(std::istream& is, std::vector<std::string>& lines) {
  lines.clear();
  std::string line;
  while (std::getline(is, line)) {
    strip_cr(line);
    if (is_blank(line)) {
      if (!lines.empty()) return true;
      continue;
    }
    lines.push_back(line);
  }
  return !lines.empty();
}

inline Sentence make_sentence(const Vocabulary& vocab, std::string raw) {
  Sentence s;
  s.tokens = vocab.lookup(tokenize(raw));
  s.raw = std::move(raw);
  return s;
}

/// Ingests a whole corpus stream against a fixed vocabulary.
inline Corpus read_corpus(std::istream& is, const Vocabulary& vocab) {
  Corpus c;
  std::vector<std::string> lines;
  while (read_document(is, lines)) {
    Document doc;
    doc.reserve(lines.size());
    for (auto& l : lines) doc.push_back(make_sentence(vocab, std::move(l)));
    c.documents.push_back(std::move(doc));
  }
  return c;
}

/// One sentence per line; blank lines are kept as empty sentences so the
/// output stays aligned with the input.
inline std::vector<std::string> read_lines(std::istream& is) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    strip_cr(line);
    out.push_back(line);
  }
  return out;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

/// Calls `fn(SentenceTriple)` for each interior sentence of each document,
/// in order. Windows never cross document boundaries.
template <typename F>
void for_each_triple(const Corpus& corpus, F&& fn) {
  for (const auto& doc : corpus.documents) {
    for (std::size_t i = 1; i + 1 < doc.size(); ++i) fn(SentenceTriple{&doc[i - 1], &doc[i], &doc[i + 1]});
  }
}

inline std::vector<SentenceTriple> iter_triples(const Corpus& corpus) {
  std::vector<SentenceTriple> out;
  out.reserve(corpus.triple_count());
  for_each_triple(corpus, [&](const SentenceTriple& t) { out.push_back(t); });
  return out;
}

}  // namespace sentrep

#endif  // SENTREP_CORPUS_HPP
