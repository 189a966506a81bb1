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

#include "guwen/depparse/tree.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace guwen::depparse {
namespace {

DependencyTree tree_of(std::vector<int> heads, std::vector<std::string> labels) {
  heads.insert(heads.begin(), -1);
  labels.insert(labels.begin(), "");
  return DependencyTree::from_heads(heads, labels);
}

/// Arbitrary head assignment: one root, the rest attached anywhere that
/// keeps the graph acyclic. Often non-projective.
DependencyTree random_tree(oracle::Rng& rng, int n) {
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) order[k] = k + 1;
  for (int k = n; k > 1; --k) std::swap(order[k - 1], order[rng() % k]);
  std::vector<int> heads(n + 1, 0);
  std::vector<std::string> labels(n + 1, "HED");
  for (int k = 1; k < n; ++k) {
    heads[order[k]] = order[rng() % k];
    labels[order[k]] = "ATT";
  }
  return DependencyTree::from_heads(heads, labels);
}

TEST(Tree, DefaultLabels) {
  const auto l = default_labels();
  EXPECT_EQ(l.size(), 7u);
  EXPECT_TRUE(l.find("HED").has_value());
  EXPECT_TRUE(l.find("SBV").has_value());
}

TEST(Tree, ValidationRejectsBrokenTrees) {
  EXPECT_TRUE(is_valid_tree(tree_of({0}, {"HED"})));
  EXPECT_TRUE(is_valid_tree(tree_of({2, 0}, {"SBV", "HED"})));
  EXPECT_FALSE(is_valid_tree(tree_of({0, 0}, {"HED", "HED"})));
  EXPECT_FALSE(is_valid_tree(tree_of({2, 1}, {"ATT", "ATT"})));
  EXPECT_FALSE(is_valid_tree(tree_of({0, 2}, {"HED", "ATT"})));
  EXPECT_FALSE(is_valid_tree(tree_of({0}, {"ATT"})));
  EXPECT_FALSE(is_valid_tree(tree_of({2, 0}, {"HED", "HED"})));
  EXPECT_FALSE(is_valid_tree(tree_of({5, 0}, {"ATT", "HED"})));
  EXPECT_FALSE(is_valid_tree(tree_of({3, 3, 1, 0}, {"ATT", "ATT", "ATT", "HED"})));
  EXPECT_TRUE(is_valid_tree(DependencyTree{}));
}

TEST(Tree, ProjectivityAgreesWithOracle) {
  oracle::Rng rng(1);
  int nonprojective = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto t = random_tree(rng, oracle::uniform_int(rng, 1, 8));
    ASSERT_TRUE(is_valid_tree(t));
    EXPECT_EQ(is_projective(t), oracle::projective(t));
    nonprojective += !oracle::projective(t);
  }
  EXPECT_GT(nonprojective, 100);
}

TEST(Tree, RandomProjectiveTreesAreProjective) {
  oracle::Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = oracle::random_projective_tree(rng, oracle::uniform_int(rng, 1, 10));
    EXPECT_TRUE(is_valid_tree(t));
    EXPECT_TRUE(oracle::well_formed(t));
    EXPECT_TRUE(is_projective(t));
  }
}

TEST(Tree, DepthAgreesWithRecursion) {
  oracle::Rng rng(3);
  EXPECT_EQ(tree_depth(tree_of({0}, {"HED"})), 1);
  EXPECT_EQ(tree_depth(tree_of({2, 3, 0}, {"ATT", "ATT", "HED"})), 3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = random_tree(rng, oracle::uniform_int(rng, 1, 10));
    EXPECT_EQ(tree_depth(t), oracle::depth(t));
  }
}

}  // namespace
}  // namespace guwen::depparse
