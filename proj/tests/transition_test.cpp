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

#include "guwen/depparse/transition.hpp"

#include <gtest/gtest.h>

#include "guwen/depparse/features.hpp"
#include "oracles.hpp"

namespace guwen::depparse {
namespace {

const LabelSet kLabels = default_labels();
const int kHed = kLabels.id("HED");
const int kSbv = kLabels.id("SBV");

std::set<int> legal_ids(const Configuration& c) {
  std::set<int> ids;
  for (const auto& t : legal_transitions(c, kLabels)) ids.insert(t.id(kLabels.size()));
  return ids;
}

Configuration after(int n, const std::vector<Transition>& ts) {
  Configuration c(n);
  for (const auto& t : ts) apply_transition(c, t, kLabels);
  return c;
}

/// Replays transitions on a bare stack and head array, independent of
/// Configuration.
std::vector<std::pair<int, std::string>> replay(int n, const std::vector<Transition>& ts) {
  std::vector<int> stack{0};
  int next = 1;
  std::vector<std::pair<int, std::string>> arcs(n + 1, {-1, ""});
  for (const auto& t : ts) {
    if (t.kind == Transition::Kind::kShift) {
      stack.push_back(next++);
      continue;
    }
    const int top = stack.back();
    const int second = stack[stack.size() - 2];
    if (t.kind == Transition::Kind::kLeftReduce) {
      arcs[second] = {top, kLabels.name(t.label)};
      stack.erase(stack.end() - 2);
    } else {
      arcs[top] = {second, kLabels.name(t.label)};
      stack.pop_back();
    }
  }
  return arcs;
}

TEST(Transition, IdsRoundTrip) {
  const std::size_t l = kLabels.size();
  EXPECT_EQ(num_transitions(l), 15u);
  for (int id = 0; id < 15; ++id) EXPECT_EQ(Transition::from_id(id, l).id(l), id);
  EXPECT_EQ(Transition::shift().id(l), 0);
  EXPECT_EQ(Transition::left(0).id(l), 1);
  EXPECT_EQ(Transition::right(0).id(l), 8);
}

TEST(Legality, Examples) {
  EXPECT_EQ(legal_ids(Configuration(3)), (std::set<int>{0}));
  const auto one = after(1, {Transition::shift()});
  EXPECT_EQ(legal_ids(one), (std::set<int>{Transition::right(kHed).id(kLabels.size())}));
  const auto two = after(2, {Transition::shift(), Transition::shift()});
  std::set<int> expect;
  for (int l = 0; l < static_cast<int>(kLabels.size()); ++l) {
    if (l == kHed) continue;
    expect.insert(Transition::left(l).id(kLabels.size()));
    expect.insert(Transition::right(l).id(kLabels.size()));
  }
  EXPECT_EQ(legal_ids(two), expect);
}

TEST(Legality, IllegalTransitionsNameTheCondition) {
  Configuration c(1);
  try {
    apply_transition(c, Transition::left(kSbv), kLabels);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("two stack elements"), std::string::npos);
  }
  apply_transition(c, Transition::shift(), kLabels);
  try {
    apply_transition(c, Transition::shift(), kLabels);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("non-empty buffer"), std::string::npos);
  }
  EXPECT_THROW(apply_transition(c, Transition::right(kSbv), kLabels), DataError);
  EXPECT_THROW(apply_transition(c, Transition::left(kHed), kLabels), DataError);
  auto early = after(2, {Transition::shift()});
  EXPECT_THROW(apply_transition(early, Transition::right(kHed), kLabels), DataError);
}

TEST(Apply, Examples) {
  auto c = after(2, {Transition::shift()});
  apply_transition(c, Transition::shift(), kLabels);
  EXPECT_EQ(c.stack(), (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(c.buffer_empty());
  apply_transition(c, Transition::left(kSbv), kLabels);
  EXPECT_EQ(c.head(1), 2);
  EXPECT_EQ(c.label(1), kSbv);
  EXPECT_EQ(c.stack(), (std::vector<int>{0, 2}));
  apply_transition(c, Transition::right(kHed), kLabels);
  EXPECT_EQ(c.head(2), 0);
  EXPECT_TRUE(is_terminal(c));
}

TEST(Terminal, Examples) {
  EXPECT_TRUE(is_terminal(Configuration(0)));
  EXPECT_FALSE(is_terminal(Configuration(1)));
  EXPECT_TRUE(is_terminal(after(1, {Transition::shift(), Transition::right(kHed)})));
}

TEST(Oracle, Examples) {
  const auto one = DependencyTree::from_heads({-1, 0}, {"", "HED"});
  EXPECT_EQ(oracle_sequence(one, kLabels),
            (std::vector<Transition>{Transition::shift(), Transition::right(kHed)}));
  const auto two = DependencyTree::from_heads({-1, 2, 0}, {"", "SBV", "HED"});
  EXPECT_EQ(oracle_sequence(two, kLabels),
            (std::vector<Transition>{Transition::shift(), Transition::shift(),
                                     Transition::left(kSbv), Transition::right(kHed)}));
}

TEST(Oracle, ReplayReconstructsRandomTrees) {
  oracle::Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = oracle::uniform_int(rng, 1, 10);
    const auto gold = oracle::random_projective_tree(rng, n);
    const auto seq = oracle_sequence(gold, kLabels);
    ASSERT_EQ(seq.size(), static_cast<std::size_t>(2 * n));
    int shifts = 0;
    for (const auto& t : seq) shifts += t.kind == Transition::Kind::kShift;
    EXPECT_EQ(shifts, n);
    const auto arcs = replay(n, seq);
    for (int d = 1; d <= n; ++d) {
      EXPECT_EQ(arcs[d].first, gold.head(d));
      EXPECT_EQ(arcs[d].second, gold.label(d));
    }
    EXPECT_EQ(after(n, seq).tree(kLabels), gold);
  }
}

TEST(Oracle, NonProjectiveTreeIsRejected) {
  // 1 <- 3, 2 <- 4 cross.
  const auto t = DependencyTree::from_heads({-1, 3, 4, 0, 3}, {"", "ATT", "ATT", "HED", "VOB"});
  try {
    oracle_sequence(t, kLabels);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "non-projective tree");
  }
}

TEST(Features, Layout) {
  const TaggedSentence empty;
  const Vocabulary vocab({"上", "焦", "之"}, {"NOUN", "OTHER"});
  const auto none = extract_features(Configuration(0), empty, vocab);
  EXPECT_EQ(none.size(), 48u);
  for (int id : none) EXPECT_EQ(id, kNullId);

  const TaggedSentence s{{"上", "焦", "之"}, {"NOUN", "NOUN", "OTHER"}};
  const auto init = extract_features(Configuration(3), s, vocab);
  for (std::size_t k = 0; k < 48; ++k) {
    const bool buffer_word = k >= 3 && k < 6;
    const bool buffer_tag = k >= 21 && k < 24;
    if (buffer_word || buffer_tag) {
      EXPECT_GE(init[k], 2) << k;
    } else {
      EXPECT_EQ(init[k], kNullId) << k;
    }
  }
  EXPECT_EQ(init[3], vocab.word_id("上"));
  EXPECT_EQ(init[5], vocab.word_id("之"));
  EXPECT_EQ(init[23], vocab.tag_id("OTHER"));
  EXPECT_EQ(vocab.word_id("unseen"), kUnknownId);
}

TEST(Features, ChildSlotsAndLabels) {
  const TaggedSentence s{{"a", "b", "c"}, {"X", "X", "X"}};
  const Vocabulary vocab({"a", "b", "c"}, {"X"});
  // Stack [ROOT, 3] with 1 <- 2 <- 3: lc1(s1) = 2, lc1(lc1(s1)) = 1.
  const auto c = after(3, {Transition::shift(), Transition::shift(),
                           Transition::left(kSbv), Transition::shift(),
                           Transition::left(kLabels.id("ATT"))});
  const auto f = extract_features(c, s, vocab);
  EXPECT_EQ(f[0], vocab.word_id("c"));
  EXPECT_EQ(f[1], kNullId);  // ROOT
  EXPECT_EQ(f[6], vocab.word_id("b"));
  EXPECT_EQ(f[10], vocab.word_id("a"));
  EXPECT_EQ(f[36], kLabels.id("ATT") + 1);
  EXPECT_EQ(f[40], kSbv + 1);
  for (std::size_t k : {7u, 8u, 9u, 11u}) EXPECT_EQ(f[k], kNullId);
}

TEST(Features, AlwaysFortyEightIdsInRange) {
  oracle::Rng rng(2);
  const Vocabulary vocab({"a", "b"}, {"X", "Y"});
  for (int trial = 0; trial < 200; ++trial) {
    const int n = oracle::uniform_int(rng, 1, 8);
    TaggedSentence s;
    for (int k = 0; k < n; ++k) {
      s.words.push_back(k % 3 == 0 ? "zz" : "a");
      s.pos.push_back("Y");
    }
    Configuration c(n);
    while (!is_terminal(c)) {
      const auto f = extract_features(c, s, vocab);
      for (std::size_t k = 0; k < 48; ++k) {
        const std::size_t bound = k < 18 ? vocab.word_table_size()
                                  : k < 36 ? vocab.tag_table_size()
                                           : kLabels.size() + 1;
        EXPECT_LT(static_cast<std::size_t>(f[k]), bound);
        EXPECT_GE(f[k], 0);
      }
      const auto legal = legal_transitions(c, kLabels);
      apply_transition(c, legal[rng() % legal.size()], kLabels);
    }
  }
}

}  // namespace
}  // namespace guwen::depparse
