// Copyright 2026 The Guwen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Loading and normalization of plain-text ancient documents.
//
// A corpus file holds one document: the first line is its title, the
// remaining lines its body. Bodies are normalized by deleting space
// characters and blank lines and nothing else, then split into sentences
// of codepoint clusters.

#ifndef GUWEN_CORPUS_HPP_
#define GUWEN_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/utf8.hpp"

namespace guwen {

struct Sentence {
  std::string text;
  /// Cluster spans into `text`; contiguous and covering it.
  std::vector<utf8::ByteSpan> chars;
  /// The sentence was the last one on its line.
  bool line_break = false;

  std::size_t size() const { return chars.size(); }

  std::string_view at(std::size_t k) const {
    return std::string_view(text).substr(chars[k].begin,
                                         chars[k].end - chars[k].begin);
  }

  std::vector<std::string> characters() const {
    std::vector<std::string> out;
    out.reserve(chars.size());
    for (std::size_t k = 0; k < chars.size(); ++k) out.emplace_back(at(k));
    return out;
  }
};

inline Sentence make_sentence(std::string text, bool line_break = false) {
  Sentence s;
  s.chars = utf8::clusters(text);
  s.text = std::move(text);
  s.line_break = line_break;
  return s;
}

struct RawDocument {
  std::string id;
  std::string title;
  std::string body;
};

struct Document {
  std::string id;
  std::string title;
  std::vector<Sentence> sentences;

  /// Reassembles the normalized body from the sentences.
  std::string body() const {
    std::string out;
    for (const Sentence& s : sentences) {
      out += s.text;
      if (s.line_break) out += '\n';
    }
    if (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
  }
};

using Corpus = std::vector<Document>;

/// Deletes ASCII spaces, tabs and U+3000, then drops empty lines.
/// Lines are rejoined with '\n' and no trailing newline.
inline std::string normalize(std::string_view raw) {
  utf8::validate(raw);
  std::string out;
  std::string line;
  bool first = true;
  const auto flush = [&] {
    if (line.empty()) return;
    if (!first) out += '\n';
    out += line;
    line.clear();
    first = false;
  };
  for (std::size_t pos = 0; pos < raw.size();) {
    const utf8::Codepoint cp = utf8::next(raw, pos);
    if (cp.value == U'\n') {
      flush();
    } else if (!utf8::is_space(cp.value)) {
      line.append(raw.substr(pos, cp.length));
    }
    pos += cp.length;
  }
  flush();
  return out;
}

inline bool is_sentence_delimiter(std::string_view cluster) {
  return cluster == "。" || cluster == "！" || cluster == "？" ||
         cluster == "；";
}

/// Splits after 。！？； (kept) and at newlines (dropped, recorded as
/// `line_break` on the preceding sentence). Never emits empty sentences.
inline std::vector<Sentence> split_sentences(std::string_view normalized) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  for (const utf8::ByteSpan& span : utf8::clusters(normalized)) {
    const std::string_view cluster =
        normalized.substr(span.begin, span.end - span.begin);
    if (cluster == "\n") {
      if (span.begin > start) {
        out.push_back(make_sentence(
            std::string(normalized.substr(start, span.begin - start)), true));
      } else if (!out.empty()) {
        out.back().line_break = true;
      }
      start = span.end;
    } else if (is_sentence_delimiter(cluster)) {
      out.push_back(make_sentence(
          std::string(normalized.substr(start, span.end - start))));
      start = span.end;
    }
  }
  if (start < normalized.size()) {
    out.push_back(make_sentence(std::string(normalized.substr(start))));
  }
  return out;
}

inline RawDocument read_raw_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.erase(0, 3);
  try {
    utf8::validate(bytes);
  } catch (const DecodeError& e) {
    throw DataError(path.string() + ": " + e.what());
  }

  RawDocument doc;
  doc.id = path.stem().string();
  const std::size_t eol = bytes.find('\n');
  doc.title = bytes.substr(0, eol);
  if (!doc.title.empty() && doc.title.back() == '\r') doc.title.pop_back();
  if (eol != std::string::npos) doc.body = bytes.substr(eol + 1);
  return doc;
}

inline Document prepare(const RawDocument& raw) {
  return Document{raw.id, raw.title, split_sentences(normalize(raw.body))};
}

/// One Document per path, in input order. Ids are file stems and must be
/// unique.
inline Corpus load_corpus(std::span<const std::filesystem::path> paths) {
  Corpus corpus;
  std::set<std::string> seen;
  for (const auto& path : paths) {
    RawDocument raw = read_raw_document(path);
    if (!seen.insert(raw.id).second) {
      throw DataError("conflict: duplicate document id '" + raw.id +
                      "' from " + path.string());
    }
    corpus.push_back(prepare(raw));
  }
  return corpus;
}

}  // namespace guwen

#endif  // GUWEN_CORPUS_HPP_
