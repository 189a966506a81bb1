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

#include "guwen/seqlabel/linear.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "guwen/tagging/features.hpp"
#include "guwen/tagging/formats.hpp"
#include "guwen/tagging/iob.hpp"
#include "oracles.hpp"

namespace guwen::seqlabel {
namespace {

/// One feature that fires on every position labeled A.
FeatureTemplateSet always_templates() {
  return {"always",
          {{TemplateOrder::kUnigram,
            [](std::span<const std::string>, std::size_t,
               std::vector<std::string>& out) { out.emplace_back("bias"); }}}};
}

LinearChainModel model_with(const TagSet& tags, const std::string& id,
                            std::vector<std::string> names,
                            std::vector<double> weights) {
  return {tags, id, std::move(names), std::move(weights)};
}

/// Enumerates fired features per position and sums their weights.
double enumerate_score(const LinearChainModel& m, const LabeledSequence& seq) {
  double total = 0.0;
  for (std::size_t i = 0; i < seq.labels.size(); ++i) {
    const std::string& cur = seq.labels[i];
    const std::string prev = i == 0 ? "START" : seq.labels[i - 1];
    const std::string& w = seq.observations[i];
    const std::string p = i == 0 ? "BOS" : seq.observations[i - 1];
    total += m.weight("W=" + w + "|" + cur);
    total += m.weight("P=" + p + "|" + cur);
    total += m.weight("T|" + prev + "|" + cur);
    total += m.weight("TW=" + w + "|" + prev + "|" + cur);
  }
  return total;
}

TEST(ScoreLinear, ZeroWeights) {
  oracle::Rng rng(1);
  const TagSet tags({"A", "B"});
  const auto names = oracle::toy_feature_names(tags, {"a", "b"});
  const auto m = model_with(tags, "toy", names, std::vector<double>(names.size(), 0.0));
  const auto t = oracle::toy_templates();
  EXPECT_EQ(score_linear(m, t, {{"a", "b", "a"}, {"A", "B", "B"}}), 0.0);
}

TEST(ScoreLinear, AlwaysFiringFeature) {
  const auto m = model_with(TagSet({"A", "B"}), "always", {"bias|A"}, {2.0});
  EXPECT_EQ(score_linear(m, always_templates(), {{"x", "y"}, {"A", "A"}}), 4.0);
  EXPECT_EQ(score_linear(m, always_templates(), {{"x", "y"}, {"A", "B"}}), 2.0);
}

TEST(ScoreLinear, MatchesPerPositionEnumeration) {
  oracle::Rng rng(2);
  const TagSet tags({"A", "B", "C"});
  const std::vector<std::string> alphabet{"a", "b"};
  const auto t = oracle::toy_templates();
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = oracle::random_linear_model(rng, tags, alphabet, false);
    LabeledSequence seq;
    for (int i = 0; i < 3; ++i) {
      seq.observations.push_back(alphabet[rng() % 2]);
      seq.labels.push_back(tags.name(static_cast<int>(rng() % 3)));
    }
    EXPECT_NEAR(score_linear(m, t, seq), enumerate_score(m, seq), 1e-12);
  }
}

TEST(ScoreLinear, UnseenFeaturesContributeZero) {
  const auto m = model_with(TagSet({"A"}), "toy", {"W=a|A"}, {1.5});
  EXPECT_EQ(score_linear(m, oracle::toy_templates(), {{"zz", "a"}, {"A", "A"}}), 1.5);
  EXPECT_THROW(score_linear(m, oracle::toy_templates(), {{"a"}, {"A", "A"}}), DataError);
}

TEST(CompiledLattice, AgreesWithScoreLinear) {
  oracle::Rng rng(3);
  const TagSet tags({"A", "B", "C"});
  const std::vector<std::string> alphabet{"a", "b", "c"};
  const auto t = oracle::toy_templates();
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = oracle::random_linear_model(rng, tags, alphabet, false);
    const std::vector<std::string> obs{"a", "c", "b", "q"};
    const CompiledSequence compiled(m, t, obs);
    const Lattice lat = compiled.lattice(m.weights());
    oracle::for_each_labeling(obs.size(), 3, [&](const oracle::Labels& l) {
      EXPECT_NEAR(lat.score(l), score_linear(m, t, {obs, oracle::names_of(tags, l)}),
                  1e-12);
    });
  }
}

TEST(LogPartitionLinear, ZeroWeightsGiveNLogT) {
  const TagSet tags({"A", "B", "C"});
  const auto names = oracle::toy_feature_names(tags, {"a"});
  const auto m = model_with(tags, "toy", names, std::vector<double>(names.size(), 0.0));
  const std::vector<std::string> obs{"a", "a", "a", "a"};
  EXPECT_NEAR(log_partition(m, oracle::toy_templates(), obs), 4 * std::log(3.0), 1e-12);
}

TEST(LogPartitionLinear, OnePositionTwoTags) {
  const auto m = model_with(TagSet({"A", "B"}), "toy", {"W=x|A", "W=x|B"}, {0.3, -1.2});
  EXPECT_NEAR(log_partition(m, oracle::toy_templates(), std::vector<std::string>{"x"}),
              std::log(std::exp(0.3) + std::exp(-1.2)), 1e-14);
}

TEST(LogPartitionLinear, MatchesBruteForceAndDominates) {
  oracle::Rng rng(4);
  const TagSet tags({"A", "B", "C"});
  const std::vector<std::string> alphabet{"a", "b"};
  const auto t = oracle::toy_templates();
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = oracle::random_linear_model(rng, tags, alphabet, false);
    for (const auto& obs : oracle::all_sequences(alphabet, 5)) {
      const auto score = [&](const oracle::Labels& l) {
        return score_linear(m, t, {obs, oracle::names_of(tags, l)});
      };
      const double z = log_partition(m, t, obs);
      EXPECT_LE(oracle::relative_error(z, oracle::brute_force_log_sum(obs.size(), 3, score)),
                1e-10);
      oracle::for_each_labeling(obs.size(), 3, [&](const oracle::Labels& l) {
        EXPECT_GE(z, score(l));
      });
    }
  }
}

TEST(ViterbiLinear, MatchesBruteForceWithIntegerTies) {
  oracle::Rng rng(5);
  const TagSet tags({"B", "M", "E", "S"});
  const std::vector<std::string> alphabet{"a", "b"};
  const auto t = oracle::toy_templates();
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = oracle::random_linear_model(rng, tags, alphabet, true);
    for (const auto& obs : oracle::all_sequences(alphabet, 5)) {
      const auto expect = oracle::brute_force_argmax(
          obs.size(), 4, [&](const oracle::Labels& l) {
            return score_linear(m, t, {obs, oracle::names_of(tags, l)});
          });
      EXPECT_EQ(viterbi(m, t, obs), oracle::names_of(tags, expect));
    }
  }
}

TEST(ViterbiLinear, ConstantShiftOfPerPositionFeatures) {
  // Exactly one W= unigram and one T bigram fire per position whatever
  // the labels, so adding c to all of them shifts every labeling by 2nc.
  oracle::Rng rng(6);
  const TagSet tags({"A", "B", "C"});
  const std::vector<std::string> alphabet{"a", "b"};
  const auto t = oracle::toy_templates();
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = oracle::random_linear_model(rng, tags, alphabet, true);
    auto shifted = m;
    for (std::size_t k = 0; k < m.num_features(); ++k) {
      const std::string& name = m.feature_names()[k];
      if (name.starts_with("W=") || name.starts_with("T|")) {
        shifted.mutable_weights()[k] += 3.0;
      }
    }
    for (const auto& obs : oracle::all_sequences(alphabet, 4)) {
      EXPECT_EQ(viterbi(shifted, t, obs), viterbi(m, t, obs));
    }
  }
}

TEST(Nll, TwoOutcomeSoftmaxGradient) {
  const auto m = model_with(TagSet({"A", "B"}), "always", {"bias|A"}, {0.0});
  const std::vector<LabeledSequence> batch{{{"x"}, {"A"}}};
  const auto r = nll_and_gradient(m, always_templates(), batch, 0.0);
  ASSERT_EQ(r.gradient.size(), 1u);
  EXPECT_NEAR(r.gradient[0], -0.5, 1e-15);
  EXPECT_NEAR(r.loss, std::log(2.0), 1e-15);
}

TEST(Nll, RegularizerOnly) {
  // The feature never fires on this data, so only lambda * w remains.
  const auto m = model_with(TagSet({"A", "B"}), "toy", {"W=zz|A", "W=yy|B"}, {0.75, -2.0});
  const std::vector<LabeledSequence> batch{{{"x"}, {"A"}}};
  const auto r = nll_and_gradient(m, oracle::toy_templates(), batch, 0.4);
  EXPECT_EQ(r.gradient[*m.feature("W=zz|A")], 0.4 * 0.75);
  EXPECT_EQ(r.gradient[*m.feature("W=yy|B")], 0.4 * -2.0);
}

TEST(Nll, Errors) {
  const auto m = model_with(TagSet({"A"}), "always", {"bias|A"}, {1e308});
  const std::vector<LabeledSequence> batch{{{"x", "y"}, {"A", "A"}}};
  EXPECT_THROW(nll_and_gradient(m, always_templates(), batch, 0.0), NumericError);
  EXPECT_THROW(nll_and_gradient(m, always_templates(), {}, 0.0), DataError);
}

TEST(Nll, GradientMatchesFiniteDifferences) {
  oracle::Rng rng(7);
  const auto t = oracle::toy_templates();
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t ntags = 2 + rng() % 3;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < ntags; ++k) names.push_back(std::string(1, 'A' + k));
    const TagSet tags(names);
    const std::vector<std::string> alphabet{"a", "b"};
    // At most 30 features, sampled from the full toy inventory.
    auto all = oracle::toy_feature_names(tags, alphabet);
    std::vector<std::string> features;
    for (std::size_t k = 0; k < all.size(); ++k) {
      const std::size_t left = all.size() - k;
      if (rng() % left < 30 - features.size()) features.push_back(all[k]);
    }
    std::vector<double> w;
    for (std::size_t k = 0; k < features.size(); ++k) w.push_back(oracle::uniform(rng, -1, 1));
    LinearChainModel m(tags, "toy", features, w);

    std::vector<LabeledSequence> batch(1 + rng() % 2);
    for (auto& seq : batch) {
      const std::size_t n = 1 + rng() % 5;
      for (std::size_t i = 0; i < n; ++i) {
        seq.observations.push_back(alphabet[rng() % 2]);
        seq.labels.push_back(tags.name(static_cast<int>(rng() % ntags)));
      }
    }
    const double l2 = trial % 2 == 0 ? 0.0 : 0.5;
    const auto r = nll_and_gradient(m, t, batch, l2);
    std::vector<double> fd(m.num_features());
    for (std::size_t k = 0; k < fd.size(); ++k) {
      fd[k] = oracle::central_difference(
          [&](double x) {
            auto probe = m;
            probe.mutable_weights()[k] = x;
            return nll_and_gradient(probe, t, batch, l2).loss;
          },
          m.weights()[k]);
    }
    EXPECT_LE(oracle::gradient_error(r.gradient, fd), 1e-4) << "trial " << trial;
  }
}

std::vector<LabeledSequence> separable_data() {
  return {{{"a", "b", "a"}, {"A", "B", "A"}},
          {{"b", "b"}, {"B", "B"}},
          {{"a"}, {"A"}},
          {{"b", "a", "a", "b"}, {"B", "A", "A", "B"}}};
}

TEST(TrainLinear, SeparableSetReachesFullAccuracy) {
  const auto data = separable_data();
  const TagSet tags({"A", "B"});
  const auto t = oracle::toy_templates();
  const auto m = train_linear(tags, t, data, {50, 0.1, 0.1, 1});
  for (const auto& seq : data) EXPECT_EQ(viterbi(m, t, seq.observations), seq.labels);
}

TEST(TrainLinear, ZeroEpochsGiveZeroWeights) {
  const auto m = train_linear(TagSet({"A", "B"}), oracle::toy_templates(),
                              separable_data(), {0, 0.1, 1.0, 1});
  EXPECT_GT(m.num_features(), 0u);
  for (double w : m.weights()) EXPECT_EQ(w, 0.0);
}

TEST(TrainLinear, SameSeedIsBitwiseIdentical) {
  const auto data = separable_data();
  const TagSet tags({"A", "B"});
  const auto a = train_linear(tags, oracle::toy_templates(), data, {7, 0.2, 1.0, 42});
  const auto b = train_linear(tags, oracle::toy_templates(), data, {7, 0.2, 1.0, 42});
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_EQ(a.feature_names(), b.feature_names());
}

TEST(TrainLinear, Errors) {
  const TagSet tags({"A"});
  EXPECT_THROW(train_linear(tags, oracle::toy_templates(), {}, {}), DataError);
  const std::vector<LabeledSequence> empty_seq{{{}, {}}};
  EXPECT_THROW(train_linear(tags, oracle::toy_templates(), empty_seq, {}), DataError);
  const std::vector<LabeledSequence> conflict{{{"a"}, {"A"}}, {{"a"}, {"B"}}};
  EXPECT_THROW(train_linear(TagSet({"A", "B"}), oracle::toy_templates(), conflict,
                            {5, 1e14, 0.0, 1}),
               NumericError);
}

TEST(TrainLinear, LossNonIncreasingOnBundledFixture) {
  std::ifstream in(std::string(GUWEN_DATA_DIR) + "/train/ner.txt");
  ASSERT_TRUE(in);
  const auto tagged = tagging::read_tagged(in);
  std::vector<LabeledSequence> data;
  for (const auto& s : tagged) data.push_back(tagging::to_iob_sequence(s));
  const TagSet tags = tagging::iob_tagset(tagging::categories_of(tagged));
  TrainReport report;
  train_linear(tags, tagging::window_templates(), data, {30, 0.1, 1.0, 1}, &report);
  ASSERT_EQ(report.epoch_loss.size(), 30u);
  for (std::size_t e = 1; e < report.epoch_loss.size(); ++e) {
    EXPECT_LE(report.epoch_loss[e], report.epoch_loss[e - 1] * (1 + 1e-3)) << "epoch " << e;
  }
  EXPECT_LT(report.epoch_loss.back(), report.epoch_loss.front());
}

TEST(SeededShuffle, IsPermutationAndReproducible) {
  std::mt19937_64 a(9), b(9);
  std::vector<std::size_t> x(50), y(50);
  for (std::size_t k = 0; k < 50; ++k) x[k] = y[k] = k;
  seeded_shuffle(x, a);
  seeded_shuffle(y, b);
  EXPECT_EQ(x, y);
  auto sorted = x;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < 50; ++k) EXPECT_EQ(sorted[k], k);
}

}  // namespace
}  // namespace guwen::seqlabel
