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

#ifndef GUWEN_SEQLABEL_TAGSET_HPP_
#define GUWEN_SEQLABEL_TAGSET_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"

namespace guwen::seqlabel {

/// Reserved name of the virtual tag preceding position 0.
inline constexpr std::string_view kStartTag = "START";

/// Ordered tag names with dense ordinals starting at 0.
class TagSet {
 public:
  TagSet() = default;

  explicit TagSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t k = 0; k < names_.size(); ++k) {
      if (names_[k].empty() || names_[k] == kStartTag) {
        throw DataError("invalid tag name '" + names_[k] + "'");
      }
      if (!index_.emplace(names_[k], static_cast<int>(k)).second) {
        throw DataError("duplicate tag '" + names_[k] + "'");
      }
    }
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int id) const { return names_.at(id); }

  std::optional<int> find(std::string_view name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int id(std::string_view name) const {
    if (auto k = find(name)) return *k;
    throw DataError("unknown tag '" + std::string(name) + "'");
  }

  std::vector<int> ids(const std::vector<std::string>& labels) const {
    std::vector<int> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(id(l));
    return out;
  }

  std::vector<std::string> names_of(const std::vector<int>& ids) const {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (int k : ids) out.push_back(name(k));
    return out;
  }

  friend bool operator==(const TagSet& a, const TagSet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> index_;
};

/// Observations paired with labels, one per position.
struct LabeledSequence {
  std::vector<std::string> observations;
  std::vector<std::string> labels;
};

inline void check_lengths(const LabeledSequence& seq) {
  if (seq.observations.size() != seq.labels.size()) {
    throw DataError("observation/label length mismatch: " +
                    std::to_string(seq.observations.size()) + " vs " +
                    std::to_string(seq.labels.size()));
  }
}

}  // namespace guwen::seqlabel

#endif  // GUWEN_SEQLABEL_TAGSET_HPP_
