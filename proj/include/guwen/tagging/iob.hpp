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

// IOB entity tags over words and the span codec.

#ifndef GUWEN_TAGGING_IOB_HPP_
#define GUWEN_TAGGING_IOB_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/seqlabel/lattice.hpp"
#include "guwen/seqlabel/tagset.hpp"

namespace guwen::tagging {

/// Noun, verb, adjective and modal words, plus a catch-all.
inline const std::vector<std::string>& default_categories() {
  static const std::vector<std::string> kCategories = {"NOUN", "VERB", "ADJ",
                                                       "MODAL", "OTHER"};
  return kCategories;
}

struct IobTag {
  enum class Kind { kO, kB, kI };

  Kind kind = Kind::kO;
  std::string category;  // empty for O

  static IobTag outside() { return {}; }
  static IobTag begin(std::string c) { return {Kind::kB, std::move(c)}; }
  static IobTag inside(std::string c) { return {Kind::kI, std::move(c)}; }

  std::string str() const {
    switch (kind) {
      case Kind::kB: return "B-" + category;
      case Kind::kI: return "I-" + category;
      default: return "O";
    }
  }

  static IobTag parse(std::string_view text) {
    if (text == "O") return outside();
    if (text.size() > 2 && text[1] == '-' && (text[0] == 'B' || text[0] == 'I')) {
      return {text[0] == 'B' ? Kind::kB : Kind::kI, std::string(text.substr(2))};
    }
    throw DataError("malformed IOB tag '" + std::string(text) + "'");
  }

  friend bool operator==(const IobTag&, const IobTag&) = default;
};

/// O first, then B-c, I-c for each category in order.
inline seqlabel::TagSet iob_tagset(std::span<const std::string> categories) {
  std::vector<std::string> names = {"O"};
  for (const auto& c : categories) {
    names.push_back("B-" + c);
    names.push_back("I-" + c);
  }
  return seqlabel::TagSet(std::move(names));
}

/// Categories of an IOB tag set, in tag order. Throws ModelError when the
/// set is not of the shape iob_tagset produces.
inline std::vector<std::string> iob_categories(const seqlabel::TagSet& tags) {
  std::vector<std::string> categories;
  try {
    for (const auto& name : tags.names()) {
      const IobTag tag = IobTag::parse(name);
      if (tag.kind == IobTag::Kind::kB) categories.push_back(tag.category);
    }
  } catch (const DataError& e) {
    throw ModelError(std::string("not an IOB tag set: ") + e.what());
  }
  if (!(tags == iob_tagset(categories))) {
    throw ModelError("not an IOB tag set");
  }
  return categories;
}

/// I-c may only follow B-c or I-c, and never opens a sequence.
inline seqlabel::TransitionMask iob_mask(const seqlabel::TagSet& tags) {
  const std::size_t n = tags.size();
  std::vector<IobTag> parsed;
  for (const auto& name : tags.names()) parsed.push_back(IobTag::parse(name));
  auto mask = seqlabel::TransitionMask::allow_all(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (parsed[t].kind != IobTag::Kind::kI) continue;
    mask.start[t] = 0;
    for (std::size_t p = 0; p < n; ++p) {
      mask.pair[p * n + t] = parsed[p].kind != IobTag::Kind::kO &&
                             parsed[p].category == parsed[t].category;
    }
  }
  return mask;
}

/// Words [start, end) form one entity of `category`.
struct EntitySpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string category;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

struct SpanDecoding {
  std::vector<EntitySpan> spans;
  /// One message per orphan I tag that was repaired into a B tag.
  std::vector<std::string> notes;
};

/// Maximal B-I runs become spans. An I-c that does not continue a c span
/// is treated as B-c and reported in `notes`.
inline SpanDecoding iob_to_spans(std::span<const std::string> words,
                                 std::span<const IobTag> tags) {
  if (words.size() != tags.size()) {
    throw DataError("word/tag length mismatch");
  }
  SpanDecoding out;
  bool open = false;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const IobTag& tag = tags[i];
    if (tag.kind == IobTag::Kind::kO) {
      open = false;
      continue;
    }
    if (tag.kind == IobTag::Kind::kI && open &&
        out.spans.back().category == tag.category) {
      out.spans.back().end = i + 1;
      continue;
    }
    if (tag.kind == IobTag::Kind::kI) {
      out.notes.push_back("orphan " + tag.str() + " at word " +
                          std::to_string(i) + " (" + words[i] +
                          ") repaired as B-" + tag.category);
    }
    out.spans.push_back({i, i + 1, tag.category});
    open = true;
  }
  return out;
}

/// Encodes sorted, non-overlapping spans over `n` words.
inline std::vector<IobTag> spans_to_iob(std::size_t n,
                                        std::span<const EntitySpan> spans) {
  std::vector<IobTag> tags(n);
  std::size_t cursor = 0;
  for (const EntitySpan& s : spans) {
    if (s.start < cursor || s.start >= s.end || s.end > n) {
      throw DataError("spans must be sorted, non-empty and non-overlapping");
    }
    tags[s.start] = IobTag::begin(s.category);
    for (std::size_t i = s.start + 1; i < s.end; ++i) {
      tags[i] = IobTag::inside(s.category);
    }
    cursor = s.end;
  }
  return tags;
}

inline std::vector<IobTag> parse_iob(std::span<const std::string> names) {
  std::vector<IobTag> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(IobTag::parse(n));
  return out;
}

inline std::vector<std::string> iob_names(std::span<const IobTag> tags) {
  std::vector<std::string> out;
  out.reserve(tags.size());
  for (const auto& t : tags) out.push_back(t.str());
  return out;
}

}  // namespace guwen::tagging

#endif  // GUWEN_TAGGING_IOB_HPP_
