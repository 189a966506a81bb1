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

// Dependency trees over tokens 1..n with a virtual ROOT at index 0.

#ifndef GUWEN_DEPPARSE_TREE_HPP_
#define GUWEN_DEPPARSE_TREE_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/seqlabel/tagset.hpp"

namespace guwen::depparse {

inline constexpr int kRoot = 0;
inline constexpr std::string_view kHeadLabel = "HED";

/// Ordered relation labels; reuses the dense name/ordinal set.
using LabelSet = seqlabel::TagSet;

/// Verb-object, left adjunct, right adjunct, coordinate, attribute
/// (determination-central), subject-verb, and the root relation.
inline LabelSet default_labels() {
  return LabelSet({"VOB", "LAD", "RAD", "COO", "ATT", "SBV", "HED"});
}

struct DependencyArc {
  int head = 0;
  int dependent = 1;
  std::string label;

  friend bool operator==(const DependencyArc&, const DependencyArc&) = default;
};

/// `arcs[k]` is the arc whose dependent is token k + 1.
struct DependencyTree {
  int n = 0;
  std::vector<DependencyArc> arcs;

  int head(int dependent) const { return arcs[dependent - 1].head; }
  const std::string& label(int dependent) const {
    return arcs[dependent - 1].label;
  }

  /// Builds a tree from 1-based head and label arrays (index 0 unused).
  static DependencyTree from_heads(const std::vector<int>& heads,
                                   const std::vector<std::string>& labels) {
    DependencyTree tree;
    tree.n = static_cast<int>(heads.size()) - 1;
    for (int d = 1; d <= tree.n; ++d) {
      tree.arcs.push_back({heads[d], d, labels[d]});
    }
    return tree;
  }

  friend bool operator==(const DependencyTree&, const DependencyTree&) = default;
};

/// Throws DataError unless every token has exactly one head, ROOT has
/// exactly one dependent (labeled HED), HED appears nowhere else, and
/// there is no cycle.
inline void validate_tree(const DependencyTree& tree) {
  const auto fail = [](const std::string& why) {
    throw DataError("invalid dependency tree: " + why);
  };
  if (tree.n < 0 || tree.arcs.size() != static_cast<std::size_t>(tree.n)) {
    fail("expected one arc per token");
  }
  int roots = 0;
  for (int d = 1; d <= tree.n; ++d) {
    const DependencyArc& arc = tree.arcs[d - 1];
    if (arc.dependent != d) fail("arcs out of order at token " + std::to_string(d));
    if (arc.head < 0 || arc.head > tree.n) {
      fail("head out of range at token " + std::to_string(d));
    }
    if (arc.head == d) fail("self loop at token " + std::to_string(d));
    if (arc.head == kRoot) {
      ++roots;
      if (arc.label != kHeadLabel) fail("root arc must be labeled HED");
    } else if (arc.label == kHeadLabel) {
      fail("HED used below the root at token " + std::to_string(d));
    }
  }
  if (tree.n > 0 && roots != 1) fail("expected exactly one root arc");
  for (int d = 1; d <= tree.n; ++d) {
    int cur = d;
    for (int steps = 0; cur != kRoot; ++steps) {
      if (steps > tree.n) fail("cycle through token " + std::to_string(d));
      cur = tree.head(cur);
    }
  }
}

inline bool is_valid_tree(const DependencyTree& tree) {
  try {
    validate_tree(tree);
    return true;
  } catch (const DataError&) {
    return false;
  }
}

/// No two arcs cross when drawn above the sentence (ROOT at position 0).
inline bool is_projective(const DependencyTree& tree) {
  for (const DependencyArc& a : tree.arcs) {
    const int lo = std::min(a.head, a.dependent);
    const int hi = std::max(a.head, a.dependent);
    for (const DependencyArc& b : tree.arcs) {
      const int blo = std::min(b.head, b.dependent);
      const int bhi = std::max(b.head, b.dependent);
      if ((blo < lo && lo < bhi && bhi < hi) ||
          (lo < blo && blo < hi && hi < bhi)) {
        return false;
      }
    }
  }
  return true;
}

/// Longest chain of heads from any token up to ROOT, counted in arcs.
inline int tree_depth(const DependencyTree& tree) {
  int depth = 0;
  for (int d = 1; d <= tree.n; ++d) {
    int len = 0;
    for (int cur = d; cur != kRoot; cur = tree.head(cur)) ++len;
    depth = std::max(depth, len);
  }
  return depth;
}

/// Words and their part-of-speech tags, one per token.
struct TaggedSentence {
  std::vector<std::string> words;
  std::vector<std::string> pos;

  std::size_t size() const { return words.size(); }
};

}  // namespace guwen::depparse

#endif  // GUWEN_DEPPARSE_TREE_HPP_
