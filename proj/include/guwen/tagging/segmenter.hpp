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

// Word segmentation and entity tagging on top of the chain models.

#ifndef GUWEN_TAGGING_SEGMENTER_HPP_
#define GUWEN_TAGGING_SEGMENTER_HPP_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "guwen/corpus.hpp"
#include "guwen/error.hpp"
#include "guwen/seqlabel/generative.hpp"
#include "guwen/seqlabel/linear.hpp"
#include "guwen/seqlabel/model_io.hpp"
#include "guwen/tagging/bmes.hpp"
#include "guwen/tagging/features.hpp"
#include "guwen/tagging/iob.hpp"

namespace guwen::tagging {

/// BMES-masked decode of a character sequence into words. Works with
/// either chain model as long as its tag set is B, M, E, S.
inline std::vector<std::string> segment_chars(
    const seqlabel::ChainModel& model, std::span<const std::string> chars) {
  if (chars.empty()) return {};
  const seqlabel::TransitionMask mask = bmes_mask();
  std::vector<int> path;
  if (const auto* gen = std::get_if<seqlabel::GenerativeChainModel>(&model)) {
    if (!(gen->tags() == bmes_tagset())) {
      throw ModelError("segmentation model must use the B,M,E,S tag set");
    }
    path = seqlabel::viterbi(gen->lattice(chars), &mask);
  } else {
    const auto& lin = std::get<seqlabel::LinearChainModel>(model);
    if (!(lin.tags() == bmes_tagset())) {
      throw ModelError("segmentation model must use the B,M,E,S tag set");
    }
    const auto templates = templates_for(lin.templates_id());
    const seqlabel::CompiledSequence compiled(lin, templates, chars);
    path = seqlabel::viterbi(compiled.lattice(lin.weights()), &mask);
  }
  std::vector<Bmes> tags;
  tags.reserve(path.size());
  for (int t : path) tags.push_back(static_cast<Bmes>(t));
  return bmes_to_words(chars, tags);
}

inline std::vector<std::string> segment(const seqlabel::ChainModel& model,
                                        const Sentence& sentence) {
  const std::vector<std::string> chars = sentence.characters();
  return segment_chars(model, chars);
}

/// IOB decode with orphan I tags masked out.
inline std::vector<IobTag> tag_entities(const seqlabel::LinearChainModel& model,
                                        std::span<const std::string> words) {
  if (words.empty()) return {};
  iob_categories(model.tags());
  const seqlabel::TransitionMask mask = iob_mask(model.tags());
  const auto templates = templates_for(model.templates_id());
  const seqlabel::CompiledSequence compiled(model, templates, words);
  const std::vector<int> path =
      seqlabel::viterbi(compiled.lattice(model.weights()), &mask);
  std::vector<IobTag> tags;
  tags.reserve(path.size());
  for (int t : path) tags.push_back(IobTag::parse(model.tags().name(t)));
  return tags;
}

}  // namespace guwen::tagging

#endif  // GUWEN_TAGGING_SEGMENTER_HPP_
