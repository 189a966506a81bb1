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

// Output renderers: word-cloud weights, and dependency trees as DOT or an
// indented text tree.

#ifndef GUWEN_EMIT_HPP_
#define GUWEN_EMIT_HPP_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "guwen/depparse/conllu.hpp"
#include "guwen/depparse/tree.hpp"
#include "guwen/keywords.hpp"

namespace guwen::emit {

struct WordCloudEntry {
  std::string term;
  double weight = 0.0;

  friend bool operator==(const WordCloudEntry&, const WordCloudEntry&) = default;
};

/// Importance clamped at 0, sorted by weight descending then term.
inline std::vector<WordCloudEntry> wordcloud_data(
    std::span<const keywords::KeywordRow> table) {
  std::vector<WordCloudEntry> out;
  out.reserve(table.size());
  for (const auto& row : table) {
    out.push_back({row.term, std::max(row.importance, 0.0)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const WordCloudEntry& a, const WordCloudEntry& b) {
                     if (a.weight != b.weight) return a.weight > b.weight;
                     return a.term < b.term;
                   });
  return out;
}

/// Compact JSON array of {"term", "weight"} objects.
inline std::string wordcloud_json(std::span<const WordCloudEntry> entries) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json item;
    item["term"] = e.term;
    item["weight"] = e.weight;
    out.push_back(std::move(item));
  }
  return out.dump();
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline void check_sentence(const depparse::DependencyTree& tree,
                           std::span<const std::string> words) {
  depparse::validate_tree(tree);
  if (words.size() != static_cast<std::size_t>(tree.n)) {
    throw DataError("sentence and tree lengths differ");
  }
}

}  // namespace detail

/// One digraph: a ROOT node, one node per token in index order, one edge
/// per arc labeled with its relation.
inline std::string tree_to_dot(const depparse::DependencyTree& tree,
                               std::span<const std::string> words,
                               const std::string& name = "dependencies") {
  detail::check_sentence(tree, words);
  std::string out = "digraph " + detail::dot_quote(name) + " {\n";
  out += "  node [shape=plaintext];\n";
  out += "  n0 [label=\"ROOT\"];\n";
  for (int d = 1; d <= tree.n; ++d) {
    out += "  n" + std::to_string(d) +
           " [label=" + detail::dot_quote(words[d - 1]) + "];\n";
  }
  for (int d = 1; d <= tree.n; ++d) {
    out += "  n" + std::to_string(tree.head(d)) + " -> n" + std::to_string(d) +
           " [label=" + detail::dot_quote(tree.label(d)) + "];\n";
  }
  out += "}\n";
  return out;
}

/// ROOT on the first line, then each token as "word (LABEL)" under its
/// head, children in token order.
inline std::string tree_to_ascii(const depparse::DependencyTree& tree,
                                 std::span<const std::string> words) {
  detail::check_sentence(tree, words);
  std::vector<std::vector<int>> children(tree.n + 1);
  for (int d = 1; d <= tree.n; ++d) children[tree.head(d)].push_back(d);

  std::string out = "ROOT";
  // Iterative depth-first walk: (token, prefix, is_last).
  struct Item {
    int token;
    std::string prefix;
    bool last;
  };
  std::vector<Item> todo;
  for (std::size_t k = children[0].size(); k-- > 0;) {
    todo.push_back({children[0][k], "", k + 1 == children[0].size()});
  }
  while (!todo.empty()) {
    const Item item = std::move(todo.back());
    todo.pop_back();
    out += '\n';
    out += item.prefix;
    out += item.last ? "└─ " : "├─ ";
    out += words[item.token - 1] + " (" + tree.label(item.token) + ")";
    const std::string below = item.prefix + (item.last ? "   " : "│  ");
    const auto& kids = children[item.token];
    for (std::size_t k = kids.size(); k-- > 0;) {
      todo.push_back({kids[k], below, k + 1 == kids.size()});
    }
  }
  return out;
}

}  // namespace guwen::emit

#endif  // GUWEN_EMIT_HPP_
