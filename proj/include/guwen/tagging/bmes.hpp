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

// BMES word-position tags: B word head, M word middle, E word end,
// S single-character word.

#ifndef GUWEN_TAGGING_BMES_HPP_
#define GUWEN_TAGGING_BMES_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/seqlabel/lattice.hpp"
#include "guwen/seqlabel/tagset.hpp"
#include "guwen/utf8.hpp"

namespace guwen::tagging {

enum class Bmes : int { kB = 0, kM = 1, kE = 2, kS = 3 };

inline std::string_view to_string(Bmes tag) {
  static constexpr std::string_view kNames[] = {"B", "M", "E", "S"};
  return kNames[static_cast<int>(tag)];
}

inline Bmes parse_bmes(std::string_view name) {
  if (name == "B") return Bmes::kB;
  if (name == "M") return Bmes::kM;
  if (name == "E") return Bmes::kE;
  if (name == "S") return Bmes::kS;
  throw DataError("unknown BMES tag '" + std::string(name) + "'");
}

/// Tag set in ordinal order B, M, E, S.
inline seqlabel::TagSet bmes_tagset() {
  return seqlabel::TagSet({"B", "M", "E", "S"});
}

inline bool bmes_can_start(Bmes t) { return t == Bmes::kB || t == Bmes::kS; }
inline bool bmes_can_end(Bmes t) { return t == Bmes::kE || t == Bmes::kS; }

/// B and M must be followed by M or E; E and S by B or S.
inline bool bmes_admissible(Bmes prev, Bmes cur) {
  const bool open = prev == Bmes::kB || prev == Bmes::kM;
  return open == (cur == Bmes::kM || cur == Bmes::kE);
}

inline seqlabel::TransitionMask bmes_mask() {
  auto mask = seqlabel::TransitionMask::allow_all(4);
  for (int p = 0; p < 4; ++p) {
    mask.start[p] = bmes_can_start(static_cast<Bmes>(p));
    mask.end[p] = bmes_can_end(static_cast<Bmes>(p));
    for (int t = 0; t < 4; ++t) {
      mask.pair[p * 4 + t] =
          bmes_admissible(static_cast<Bmes>(p), static_cast<Bmes>(t));
    }
  }
  return mask;
}

inline std::vector<Bmes> words_to_bmes(std::span<const std::string> words) {
  std::vector<Bmes> tags;
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::size_t k = utf8::length(words[w]);
    if (k == 0) throw DataError("empty word at index " + std::to_string(w));
    if (k == 1) {
      tags.push_back(Bmes::kS);
      continue;
    }
    tags.push_back(Bmes::kB);
    tags.insert(tags.end(), k - 2, Bmes::kM);
    tags.push_back(Bmes::kE);
  }
  return tags;
}

/// Inverse of words_to_bmes. Throws DataError naming the first position
/// where the tag sequence is inadmissible.
inline std::vector<std::string> bmes_to_words(
    std::span<const std::string> chars, std::span<const Bmes> tags) {
  if (chars.size() != tags.size()) {
    throw DataError("character/tag length mismatch");
  }
  const auto fail = [](std::size_t pos, std::string_view why) {
    throw DataError("inadmissible BMES sequence at position " +
                    std::to_string(pos) + ": " + std::string(why));
  };
  std::vector<std::string> words;
  std::string current;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (i == 0 && !bmes_can_start(tags[i])) fail(i, "cannot open a sentence");
    if (i > 0 && !bmes_admissible(tags[i - 1], tags[i])) {
      fail(i, std::string(to_string(tags[i - 1])) + " followed by " +
                  std::string(to_string(tags[i])));
    }
    current += chars[i];
    if (bmes_can_end(tags[i])) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!tags.empty() && !bmes_can_end(tags.back())) {
    fail(tags.size() - 1, "unfinished word");
  }
  return words;
}

}  // namespace guwen::tagging

#endif  // GUWEN_TAGGING_BMES_HPP_
