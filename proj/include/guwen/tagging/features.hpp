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

// Tri-gram window features shared by the word-level entity tagger and the
// character-level segmenter.

#ifndef GUWEN_TAGGING_FEATURES_HPP_
#define GUWEN_TAGGING_FEATURES_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/seqlabel/linear.hpp"

namespace guwen::tagging {

inline constexpr std::string_view kBeginMarker = "⟨s⟩";
inline constexpr std::string_view kEndMarker = "⟨/s⟩";

/// Identifier persisted with linear models built on window_templates().
inline constexpr std::string_view kTrigramWindow = "trigram-window";

/// U0, U-1, U+1, B-1, B+1 and T attributes of the window around token i,
/// in that order. Neighbors outside the sequence become ⟨s⟩ / ⟨/s⟩.
inline std::vector<std::string> trigram_features(
    std::span<const std::string> tokens, std::size_t i) {
  if (i >= tokens.size()) {
    throw DataError("feature position " + std::to_string(i) +
                    " out of range for length " +
                    std::to_string(tokens.size()));
  }
  const std::string cur = tokens[i];
  const std::string prev = i == 0 ? std::string(kBeginMarker) : tokens[i - 1];
  const std::string next =
      i + 1 == tokens.size() ? std::string(kEndMarker) : tokens[i + 1];
  return {
      "U0:" + cur,
      "U-1:" + prev,
      "U+1:" + next,
      "B-1:" + prev + "_" + cur,
      "B+1:" + cur + "_" + next,
      "T:" + prev + "_" + cur + "_" + next,
  };
}

/// The six window attributes conjoined with the current tag, plus a label
/// bigram feature ("LB|prev|cur").
inline seqlabel::FeatureTemplateSet window_templates() {
  using seqlabel::FeatureTemplate;
  using seqlabel::TemplateOrder;
  std::vector<FeatureTemplate> templates;
  templates.push_back({TemplateOrder::kUnigram,
                       [](std::span<const std::string> obs, std::size_t i,
                          std::vector<std::string>& out) {
                         for (auto& f : trigram_features(obs, i)) {
                           out.push_back(std::move(f));
                         }
                       }});
  templates.push_back({TemplateOrder::kBigram,
                       [](std::span<const std::string>, std::size_t,
                          std::vector<std::string>& out) {
                         out.emplace_back("LB");
                       }});
  return seqlabel::FeatureTemplateSet(std::string(kTrigramWindow),
                                      std::move(templates));
}

/// Template set registered under `id`; throws ModelError if unknown.
inline seqlabel::FeatureTemplateSet templates_for(std::string_view id) {
  if (id == kTrigramWindow) return window_templates();
  throw ModelError("unknown feature template set '" + std::string(id) + "'");
}

}  // namespace guwen::tagging

#endif  // GUWEN_TAGGING_FEATURES_HPP_
