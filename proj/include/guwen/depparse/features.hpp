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

// The 48-slot feature layout of the neural transition classifier:
// 18 word slots, the same 18 slots' tags, and the labels of the 12
// child slots.

#ifndef GUWEN_DEPPARSE_FEATURES_HPP_
#define GUWEN_DEPPARSE_FEATURES_HPP_

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "guwen/depparse/transition.hpp"
#include "guwen/depparse/tree.hpp"
#include "guwen/error.hpp"

namespace guwen::depparse {

inline constexpr std::size_t kWordSlots = 18;
inline constexpr std::size_t kLabelSlots = 12;
inline constexpr std::size_t kNumFeatures = 2 * kWordSlots + kLabelSlots;

/// Reserved ids shared by the word, tag and label tables.
inline constexpr int kNullId = 0;
inline constexpr int kUnknownId = 1;

using FeatureVector = std::array<int, kNumFeatures>;

/// String-to-id tables for words and tags. Id 0 is NULL (absent slot,
/// also used for ROOT), id 1 is UNK, known entries start at 2. Label ids
/// are the LabelSet ordinal + 1 so that 0 stays NULL.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Entries are sorted so that ids do not depend on input order.
  Vocabulary(std::vector<std::string> words, std::vector<std::string> tags)
      : words_(sorted(std::move(words))), tags_(sorted(std::move(tags))) {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      word_ids_[words_[k]] = static_cast<int>(k) + 2;
    }
    for (std::size_t k = 0; k < tags_.size(); ++k) {
      tag_ids_[tags_[k]] = static_cast<int>(k) + 2;
    }
  }

  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::string>& tags() const { return tags_; }
  std::size_t word_table_size() const { return words_.size() + 2; }
  std::size_t tag_table_size() const { return tags_.size() + 2; }

  int word_id(const std::string& w) const {
    const auto it = word_ids_.find(w);
    return it == word_ids_.end() ? kUnknownId : it->second;
  }
  int tag_id(const std::string& t) const {
    const auto it = tag_ids_.find(t);
    return it == tag_ids_.end() ? kUnknownId : it->second;
  }

 private:
  static std::vector<std::string> sorted(std::vector<std::string> v) {
    std::set<std::string> s(v.begin(), v.end());
    return {s.begin(), s.end()};
  }

  std::vector<std::string> words_;
  std::vector<std::string> tags_;
  std::map<std::string, int> word_ids_;
  std::map<std::string, int> tag_ids_;
};

/// Tokens at the 18 slots: s1..s3, b1..b3, then for s1 and s2 in turn
/// lc1, rc1, lc2, rc2, lc1(lc1), rc1(rc1). -1 marks an absent slot.
inline std::array<int, kWordSlots> feature_tokens(const Configuration& c) {
  std::array<int, kWordSlots> slots{};
  for (int k = 0; k < 3; ++k) {
    slots[k] = c.stack_at(k);
    slots[3 + k] = c.buffer_at(k);
  }
  for (int k = 0; k < 2; ++k) {
    const int s = c.stack_at(k);
    const int lc1 = c.leftmost_child(s, 1);
    const int rc1 = c.rightmost_child(s, 1);
    int* out = &slots[6 + 6 * k];
    out[0] = lc1;
    out[1] = rc1;
    out[2] = c.leftmost_child(s, 2);
    out[3] = c.rightmost_child(s, 2);
    out[4] = c.leftmost_child(lc1, 1);
    out[5] = c.rightmost_child(rc1, 1);
  }
  return slots;
}

inline FeatureVector extract_features(const Configuration& c,
                                      const TaggedSentence& sentence,
                                      const Vocabulary& vocab) {
  const auto tokens = feature_tokens(c);
  FeatureVector ids{};
  for (std::size_t k = 0; k < kWordSlots; ++k) {
    const int tok = tokens[k];
    if (tok <= kRoot) {
      ids[k] = ids[kWordSlots + k] = kNullId;
      continue;
    }
    ids[k] = vocab.word_id(sentence.words[tok - 1]);
    ids[kWordSlots + k] = vocab.tag_id(sentence.pos[tok - 1]);
  }
  for (std::size_t k = 0; k < kLabelSlots; ++k) {
    const int tok = tokens[6 + k];
    ids[2 * kWordSlots + k] = tok <= kRoot ? kNullId : c.label(tok) + 1;
  }
  return ids;
}

}  // namespace guwen::depparse

#endif  // GUWEN_DEPPARSE_FEATURES_HPP_
