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

// CoNLL-U style treebank I/O. Ten tab-separated columns per token:
// ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS MISC; only ID, FORM,
// UPOS, HEAD and DEPREL carry data, the rest are written as "_".
// Sentences end with a blank line; lines starting with '#' are skipped.

#ifndef GUWEN_DEPPARSE_CONLLU_HPP_
#define GUWEN_DEPPARSE_CONLLU_HPP_

#include <istream>
#include <string>
#include <vector>

#include "guwen/depparse/tree.hpp"
#include "guwen/error.hpp"
#include "guwen/textio.hpp"

namespace guwen::depparse {

struct TreebankEntry {
  TaggedSentence sentence;
  DependencyTree tree;
};

/// One sentence block including its terminating blank line.
inline std::string to_conllu(const DependencyTree& tree,
                             const TaggedSentence& sentence) {
  validate_tree(tree);
  if (sentence.words.size() != static_cast<std::size_t>(tree.n) ||
      sentence.pos.size() != sentence.words.size()) {
    throw DataError("sentence and tree lengths differ");
  }
  std::string out;
  for (int d = 1; d <= tree.n; ++d) {
    out += std::to_string(d) + '\t' + sentence.words[d - 1] + "\t_\t" +
           sentence.pos[d - 1] + "\t_\t_\t" + std::to_string(tree.head(d)) +
           '\t' + tree.label(d) + "\t_\t_\n";
  }
  out += '\n';
  return out;
}

/// Reads every sentence block. Trees are validated; errors carry the line
/// number.
inline std::vector<TreebankEntry> read_conllu(std::istream& in) {
  std::vector<TreebankEntry> out;
  TreebankEntry current;
  std::vector<int> heads = {0};
  std::vector<std::string> labels = {""};
  std::string line;
  std::size_t line_no = 0;
  std::size_t block_start = 1;

  const auto fail = [&](const std::string& why) {
    throw DataError("line " + std::to_string(line_no) + ": " + why);
  };
  const auto finish = [&] {
    if (current.sentence.words.empty()) return;
    current.tree = DependencyTree::from_heads(heads, labels);
    try {
      validate_tree(current.tree);
    } catch (const DataError& e) {
      throw DataError("sentence starting at line " +
                      std::to_string(block_start) + ": " + e.what());
    }
    out.push_back(std::move(current));
    current = {};
    heads = {0};
    labels = {""};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish();
      continue;
    }
    if (line[0] == '#') continue;
    const auto cols = textio::split(line, '\t');
    if (cols.size() != 10) fail("expected 10 columns");
    if (current.sentence.words.empty()) block_start = line_no;
    long long id = 0;
    long long head = 0;
    try {
      id = textio::parse_int(cols[0]);
      head = textio::parse_int(cols[6]);
    } catch (const ModelError&) {
      fail("malformed ID or HEAD");
    }
    if (id != static_cast<long long>(current.sentence.words.size()) + 1) {
      fail("token ids must run 1, 2, 3, ...");
    }
    if (cols[1].empty() || cols[3].empty() || cols[7].empty()) {
      fail("empty FORM, UPOS or DEPREL");
    }
    current.sentence.words.push_back(cols[1]);
    current.sentence.pos.push_back(cols[3]);
    heads.push_back(static_cast<int>(head));
    labels.push_back(cols[7]);
  }
  finish();
  return out;
}

}  // namespace guwen::depparse

#endif  // GUWEN_DEPPARSE_CONLLU_HPP_
