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

// Minimal UTF-8 helpers: validation, codepoint iteration and clustering.

#ifndef GUWEN_UTF8_HPP_
#define GUWEN_UTF8_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"

namespace guwen::utf8 {

struct Codepoint {
  char32_t value = 0;
  std::size_t length = 0;  // bytes
};

/// Decodes the codepoint starting at `pos`. Rejects overlong forms,
/// surrogates and values above U+10FFFF.
inline Codepoint next(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(text[k]);
  };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1};

  std::size_t length = 0;
  char32_t value = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2, value = lead & 0x1F, min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3, value = lead & 0x0F, min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4, value = lead & 0x07, min_value = 0x10000;
  } else {
    throw DecodeError(pos);
  }
  if (pos + length > text.size()) throw DecodeError(pos);
  for (std::size_t k = 1; k < length; ++k) {
    const unsigned char c = byte(pos + k);
    if ((c & 0xC0) != 0x80) throw DecodeError(pos + k);
    value = (value << 6) | (c & 0x3F);
  }
  if (value < min_value || value > 0x10FFFF ||
      (value >= 0xD800 && value <= 0xDFFF)) {
    throw DecodeError(pos);
  }
  return {value, length};
}

/// Throws DecodeError naming the first invalid byte offset.
inline void validate(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size();) pos += next(text, pos).length;
}

inline std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> out;
  for (std::size_t pos = 0; pos < text.size();) {
    const Codepoint cp = next(text, pos);
    out.push_back(cp.value);
    pos += cp.length;
  }
  return out;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(char32_t cp) {
  std::string out;
  append(out, cp);
  return out;
}

/// Codepoints that attach to the preceding one: combining marks,
/// variation selectors (including the ideographic variation sequences
/// common in classical texts) and the zero-width joiner.
inline bool is_extender(char32_t cp) {
  return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x1AB0 && cp <= 0x1AFF) ||
         (cp >= 0x1DC0 && cp <= 0x1DFF) || (cp >= 0x20D0 && cp <= 0x20FF) ||
         (cp >= 0xFE20 && cp <= 0xFE2F) || (cp >= 0xFE00 && cp <= 0xFE0F) ||
         (cp >= 0xE0100 && cp <= 0xE01EF) || cp == 0x200D;
}

struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

/// Splits `text` into codepoint clusters. A cluster is a base codepoint
/// followed by any extenders; a ZWJ also pulls in the codepoint after it.
inline std::vector<ByteSpan> clusters(std::string_view text) {
  std::vector<ByteSpan> out;
  bool joined = false;
  for (std::size_t pos = 0; pos < text.size();) {
    const Codepoint cp = next(text, pos);
    if (!out.empty() && (joined || is_extender(cp.value))) {
      out.back().end = pos + cp.length;
    } else {
      out.push_back({pos, pos + cp.length});
    }
    joined = cp.value == 0x200D;
    pos += cp.length;
  }
  return out;
}

/// Cluster strings of `text`, in order.
inline std::vector<std::string> split_clusters(std::string_view text) {
  std::vector<std::string> out;
  for (const ByteSpan& span : clusters(text)) {
    out.emplace_back(text.substr(span.begin, span.end - span.begin));
  }
  return out;
}

inline std::size_t length(std::string_view text) {
  return clusters(text).size();
}

inline bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == 0x3000;
}

inline bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x00A1 && cp <= 0x00BF) || (cp >= 0x2000 && cp <= 0x206F) ||
         (cp >= 0x2E00 && cp <= 0x2E7F) || (cp >= 0x3000 && cp <= 0x303F) ||
         (cp >= 0xFE10 && cp <= 0xFE1F) || (cp >= 0xFE30 && cp <= 0xFE4F) ||
         (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65);
}

/// True when every codepoint of a non-empty token is punctuation or space.
inline bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return false;
  for (char32_t cp : decode(token)) {
    if (!is_punctuation(cp) && !is_space(cp) && cp != U'\n' && cp != U'\r') {
      return false;
    }
  }
  return true;
}

}  // namespace guwen::utf8

#endif  // GUWEN_UTF8_HPP_
