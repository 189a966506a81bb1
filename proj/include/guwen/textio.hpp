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

// Shared helpers for the line-oriented text formats: number formatting,
// field escaping, whole-file I/O.

#ifndef GUWEN_TEXTIO_HPP_
#define GUWEN_TEXTIO_HPP_

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"

namespace guwen::textio {

/// printf-style "%.<digits>g".
inline std::string format_g(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

/// 17 significant digits: round-trips every double.
inline std::string format_exact(double value) { return format_g(value, 17); }

inline double parse_double(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ModelError("malformed number '" + s + "'");
  }
  return v;
}

inline long long parse_int(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ModelError("malformed integer '" + s + "'");
  }
  return v;
}

/// Backslash-escapes tab, newline, carriage return and backslash.
inline std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string unescape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] != '\\') {
      out += text[k];
      continue;
    }
    if (++k == text.size()) throw ModelError("dangling escape");
    switch (text[k]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: throw ModelError("unknown escape");
    }
  }
  return out;
}

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path,
                       std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

/// Reads "key value" header lines and bare lines from a model stream.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) {
      throw ModelError("unexpected end of model file at line " +
                       std::to_string(line_no_ + 1));
    }
    ++line_no_;
    return line;
  }

  /// Expects "key value" and returns value.
  std::string field(std::string_view key) {
    const std::string line = next();
    if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ') {
      throw ModelError("expected '" + std::string(key) + "' at line " +
                       std::to_string(line_no_));
    }
    return line.substr(key.size() + 1);
  }

  std::size_t count(std::string_view key) {
    const long long v = parse_int(field(key));
    if (v < 0) throw ModelError("negative count for " + std::string(key));
    return static_cast<std::size_t>(v);
  }

  std::vector<double> numbers(std::size_t expected) {
    std::vector<double> out;
    const std::string line = next();
    if (expected == 0 && line.empty()) return out;
    for (const auto& tok : split(line, ' ')) out.push_back(parse_double(tok));
    if (out.size() != expected) {
      throw ModelError("expected " + std::to_string(expected) +
                       " numbers at line " + std::to_string(line_no_));
    }
    return out;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

inline std::string join_numbers(const double* begin, std::size_t count) {
  std::string out;
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) out += ' ';
    out += format_exact(begin[k]);
  }
  return out;
}

}  // namespace guwen::textio

#endif  // GUWEN_TEXTIO_HPP_
