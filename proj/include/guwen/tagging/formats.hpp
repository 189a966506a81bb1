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

// Line formats for segmentation and entity-tagging data.
//
//   segmentation: one sentence per line, words separated by single spaces
//   entities:     one sentence per line, word/TAG tokens separated by
//                 single spaces, TAG in {O, B-X, I-X}

#ifndef GUWEN_TAGGING_FORMATS_HPP_
#define GUWEN_TAGGING_FORMATS_HPP_

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/seqlabel/tagset.hpp"
#include "guwen/tagging/bmes.hpp"
#include "guwen/tagging/iob.hpp"
#include "guwen/textio.hpp"
#include "guwen/utf8.hpp"

namespace guwen::tagging {

struct TaggedWords {
  std::vector<std::string> words;
  std::vector<IobTag> tags;
};

namespace detail {

[[noreturn]] inline void bad_line(std::size_t line_no, std::string_view why) {
  throw DataError("line " + std::to_string(line_no) + ": " + std::string(why));
}

/// Calls fn(line_no, tokens) for each non-blank line.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      utf8::validate(line);
    } catch (const DecodeError& e) {
      bad_line(line_no, e.what());
    }
    std::vector<std::string> tokens = textio::split(line, ' ');
    for (const auto& t : tokens) {
      if (t.empty()) bad_line(line_no, "empty token (doubled or edge space)");
    }
    fn(line_no, std::move(tokens));
  }
}

}  // namespace detail

inline std::vector<std::vector<std::string>> read_segmented(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  detail::for_each_line(in, [&](std::size_t, std::vector<std::string> words) {
    out.push_back(std::move(words));
  });
  return out;
}

inline std::vector<TaggedWords> read_tagged(std::istream& in) {
  std::vector<TaggedWords> out;
  detail::for_each_line(in, [&](std::size_t line_no,
                                std::vector<std::string> tokens) {
    TaggedWords sentence;
    for (const auto& token : tokens) {
      const std::size_t slash = token.rfind('/');
      if (slash == std::string::npos || slash == 0) {
        detail::bad_line(line_no, "expected word/TAG, got '" + token + "'");
      }
      sentence.words.push_back(token.substr(0, slash));
      try {
        sentence.tags.push_back(IobTag::parse(token.substr(slash + 1)));
      } catch (const DataError& e) {
        detail::bad_line(line_no, e.what());
      }
    }
    out.push_back(std::move(sentence));
  });
  return out;
}

inline std::string format_segmented(std::span<const std::string> words) {
  std::string out;
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (k > 0) out += ' ';
    out += words[k];
  }
  return out;
}

inline std::string format_tagged(std::span<const std::string> words,
                                 std::span<const IobTag> tags) {
  std::string out;
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (k > 0) out += ' ';
    out += words[k];
    out += '/';
    out += tags[k].str();
  }
  return out;
}

/// Character observations with BMES labels for one segmented sentence.
inline seqlabel::LabeledSequence to_bmes_sequence(
    std::span<const std::string> words) {
  seqlabel::LabeledSequence seq;
  for (const auto& w : words) {
    for (auto& c : utf8::split_clusters(w)) {
      seq.observations.push_back(std::move(c));
    }
  }
  for (Bmes t : words_to_bmes(words)) {
    seq.labels.emplace_back(to_string(t));
  }
  return seq;
}

inline seqlabel::LabeledSequence to_iob_sequence(const TaggedWords& sentence) {
  return {sentence.words, iob_names(sentence.tags)};
}

/// Default categories followed by any others found in `data`, in order of
/// first appearance.
inline std::vector<std::string> categories_of(
    std::span<const TaggedWords> data,
    std::vector<std::string> base = default_categories()) {
  for (const auto& s : data) {
    for (const auto& t : s.tags) {
      if (t.kind == IobTag::Kind::kO) continue;
      bool known = false;
      for (const auto& c : base) known = known || c == t.category;
      if (!known) base.push_back(t.category);
    }
  }
  return base;
}

}  // namespace guwen::tagging

#endif  // GUWEN_TAGGING_FORMATS_HPP_
