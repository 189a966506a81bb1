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

// Linear-chain model over weighted binary feature functions.
//
// A feature function looks at (S, i, l_i, l_i-1) and fires or not. Feature
// templates produce observation attributes at position i; a unigram
// template conjoins each attribute with l_i ("attr|cur"), a bigram
// template with both labels ("attr|prev|cur", prev = START at i = 0).
// A labeling scores sum_i sum_k w_k f_k(S, i, l_i, l_i-1).

#ifndef GUWEN_SEQLABEL_LINEAR_HPP_
#define GUWEN_SEQLABEL_LINEAR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/seqlabel/lattice.hpp"
#include "guwen/seqlabel/tagset.hpp"

namespace guwen::seqlabel {

enum class TemplateOrder { kUnigram, kBigram };

struct FeatureTemplate {
  TemplateOrder order = TemplateOrder::kUnigram;
  /// Appends the attributes observed at position i.
  std::function<void(std::span<const std::string>, std::size_t,
                     std::vector<std::string>&)>
      observe;
};

inline std::string unigram_feature(std::string_view attr, std::string_view cur) {
  std::string name(attr);
  name += '|';
  name += cur;
  return name;
}

inline std::string bigram_feature(std::string_view attr, std::string_view prev,
                                  std::string_view cur) {
  std::string name(attr);
  name += '|';
  name += prev;
  name += '|';
  name += cur;
  return name;
}

class FeatureTemplateSet {
 public:
  FeatureTemplateSet() = default;
  FeatureTemplateSet(std::string id, std::vector<FeatureTemplate> templates)
      : id_(std::move(id)), templates_(std::move(templates)) {}

  /// Persisted with models so a loader can rebuild the same set.
  const std::string& id() const { return id_; }

  struct Attributes {
    std::vector<std::string> unigram;
    std::vector<std::string> bigram;
  };

  Attributes attributes(std::span<const std::string> obs, std::size_t i) const {
    Attributes out;
    for (const FeatureTemplate& t : templates_) {
      t.observe(obs, i,
                t.order == TemplateOrder::kUnigram ? out.unigram : out.bigram);
    }
    return out;
  }

  /// Names of the features firing at (obs, i, cur, prev); an empty `prev`
  /// stands for START.
  std::vector<std::string> fire(std::span<const std::string> obs, std::size_t i,
                                std::string_view cur,
                                std::string_view prev) const {
    const Attributes attrs = attributes(obs, i);
    const std::string_view before = prev.empty() ? kStartTag : prev;
    std::vector<std::string> names;
    for (const auto& a : attrs.unigram) names.push_back(unigram_feature(a, cur));
    for (const auto& a : attrs.bigram) {
      names.push_back(bigram_feature(a, before, cur));
    }
    return names;
  }

 private:
  std::string id_;
  std::vector<FeatureTemplate> templates_;
};

/// Feature index (sorted by name, dense ids) and one weight per feature.
class LinearChainModel {
 public:
  LinearChainModel() = default;

  LinearChainModel(TagSet tags, std::string templates_id,
                   std::vector<std::string> names, std::vector<double> weights)
      : tags_(std::move(tags)), templates_id_(std::move(templates_id)) {
    if (names.size() != weights.size()) {
      throw ModelError("feature names and weights differ in length");
    }
    std::vector<std::size_t> order(names.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    names_.reserve(names.size());
    weights_.reserve(names.size());
    for (std::size_t k : order) {
      if (!std::isfinite(weights[k])) {
        throw ModelError("non-finite weight for feature '" + names[k] + "'");
      }
      if (!index_.emplace(names[k], static_cast<int>(names_.size())).second) {
        throw ModelError("duplicate feature '" + names[k] + "'");
      }
      names_.push_back(std::move(names[k]));
      weights_.push_back(weights[k]);
    }
  }

  const TagSet& tags() const { return tags_; }
  const std::string& templates_id() const { return templates_id_; }
  std::size_t num_features() const { return names_.size(); }
  const std::vector<std::string>& feature_names() const { return names_; }
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& mutable_weights() { return weights_; }

  std::optional<int> feature(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  double weight(const std::string& name) const {
    const auto id = feature(name);
    return id ? weights_[*id] : 0.0;
  }

 private:
  TagSet tags_;
  std::string templates_id_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> weights_;
};

/// Sum of the weights of every feature firing along the labeling. Goes
/// through FeatureTemplateSet::fire rather than the compiled lattice.
inline double score_linear(const LinearChainModel& model,
                           const FeatureTemplateSet& templates,
                           const LabeledSequence& seq) {
  check_lengths(seq);
  double total = 0.0;
  for (std::size_t i = 0; i < seq.labels.size(); ++i) {
    const std::string_view prev =
        i == 0 ? std::string_view{} : std::string_view(seq.labels[i - 1]);
    for (const auto& name :
         templates.fire(seq.observations, i, seq.labels[i], prev)) {
      total += model.weight(name);
    }
  }
  return total;
}

/// Feature ids of one observation sequence, resolved against a model's
/// index for every (position, prev, cur) choice.
class CompiledSequence {
 public:
  CompiledSequence(const LinearChainModel& model,
                   const FeatureTemplateSet& templates,
                   std::span<const std::string> obs)
      : length_(obs.size()), tags_(model.tags().size()) {
    const auto& names = model.tags().names();
    unary_.resize(length_ * tags_);
    pair_.resize(length_ * (tags_ + 1) * tags_);
    for (std::size_t i = 0; i < length_; ++i) {
      const auto attrs = templates.attributes(obs, i);
      for (std::size_t t = 0; t < tags_; ++t) {
        auto& ids = unary_[i * tags_ + t];
        for (const auto& a : attrs.unigram) {
          if (auto id = model.feature(unigram_feature(a, names[t]))) {
            ids.push_back(*id);
          }
        }
        for (std::size_t p = 0; p <= tags_; ++p) {
          if ((i == 0) != (p == tags_)) continue;
          const std::string_view prev = p == tags_ ? kStartTag : names[p];
          auto& pids = pair(i, p, t);
          for (const auto& a : attrs.bigram) {
            if (auto id = model.feature(bigram_feature(a, prev, names[t]))) {
              pids.push_back(*id);
            }
          }
        }
      }
    }
  }

  std::size_t length() const { return length_; }
  std::size_t tags() const { return tags_; }

  const std::vector<int>& unary(std::size_t i, std::size_t t) const {
    return unary_[i * tags_ + t];
  }
  /// `prev == tags()` selects START and is only populated at i = 0.
  const std::vector<int>& pair(std::size_t i, std::size_t prev,
                               std::size_t t) const {
    return pair_[(i * (tags_ + 1) + prev) * tags_ + t];
  }

  /// Potentials under weights `scale * w`.
  Lattice lattice(std::span<const double> w, double scale = 1.0) const {
    const auto sum = [&](const std::vector<int>& ids) {
      double s = 0.0;
      for (int id : ids) s += w[id];
      return s * scale;
    };
    Lattice lat(length_, tags_);
    for (std::size_t i = 0; i < length_; ++i) {
      for (std::size_t t = 0; t < tags_; ++t) {
        lat.node(i, t) = sum(unary(i, t));
        if (i == 0) {
          lat.node(i, t) += sum(pair(0, tags_, t));
          continue;
        }
        for (std::size_t p = 0; p < tags_; ++p) {
          lat.edge(i, p, t) = sum(pair(i, p, t));
        }
      }
    }
    return lat;
  }

  /// Calls fn(feature id, count) for every feature along `labels`.
  template <typename Fn>
  void for_each_fired(std::span<const int> labels, Fn&& fn) const {
    for (std::size_t i = 0; i < length_; ++i) {
      const std::size_t p = i == 0 ? tags_ : labels[i - 1];
      for (int id : unary(i, labels[i])) fn(id, 1.0);
      for (int id : pair(i, p, labels[i])) fn(id, 1.0);
    }
  }

  /// Calls fn(feature id, expected count) under the given marginals.
  template <typename Fn>
  void for_each_expected(const Marginals& m, Fn&& fn) const {
    for (std::size_t i = 0; i < length_; ++i) {
      for (std::size_t t = 0; t < tags_; ++t) {
        const double q = m.node[i * tags_ + t];
        for (int id : unary(i, t)) fn(id, q);
        if (i == 0) {
          for (int id : pair(0, tags_, t)) fn(id, q);
          continue;
        }
        for (std::size_t p = 0; p < tags_; ++p) {
          const double e = m.edge[((i - 1) * tags_ + p) * tags_ + t];
          for (int id : pair(i, p, t)) fn(id, e);
        }
      }
    }
  }

 private:
  std::vector<int>& pair(std::size_t i, std::size_t prev, std::size_t t) {
    return pair_[(i * (tags_ + 1) + prev) * tags_ + t];
  }

  std::size_t length_;
  std::size_t tags_;
  std::vector<std::vector<int>> unary_;
  std::vector<std::vector<int>> pair_;
};

inline double log_partition(const LinearChainModel& model,
                            const FeatureTemplateSet& templates,
                            std::span<const std::string> observations) {
  if (observations.empty()) throw DataError("empty observation sequence");
  const CompiledSequence compiled(model, templates, observations);
  return log_partition(compiled.lattice(model.weights()));
}

inline std::vector<std::string> viterbi(
    const LinearChainModel& model, const FeatureTemplateSet& templates,
    std::span<const std::string> observations,
    const TransitionMask* mask = nullptr) {
  if (observations.empty()) throw DataError("empty observation sequence");
  const CompiledSequence compiled(model, templates, observations);
  return model.tags().names_of(
      viterbi(compiled.lattice(model.weights()), mask));
}

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

/// Regularized negative log-likelihood of `batch`:
///   sum(log Z - score(gold)) + (l2 / 2) |w|^2
/// with gradient E[f] - f(gold) + l2 * w.
inline LossAndGradient nll_and_gradient(const LinearChainModel& model,
                                        const FeatureTemplateSet& templates,
                                        std::span<const LabeledSequence> batch,
                                        double l2) {
  if (batch.empty()) throw DataError("empty batch");
  const auto& w = model.weights();
  LossAndGradient out;
  out.gradient.assign(w.size(), 0.0);
  for (const LabeledSequence& seq : batch) {
    check_lengths(seq);
    if (seq.labels.empty()) throw DataError("empty training sequence");
    const std::vector<int> gold = model.tags().ids(seq.labels);
    const CompiledSequence compiled(model, templates, seq.observations);
    const Lattice lat = compiled.lattice(w);
    const Marginals m = marginals(lat);
    const double gold_score = lat.score(gold);
    if (!std::isfinite(m.log_z) || !std::isfinite(gold_score)) {
      throw NumericError("numeric overflow");
    }
    out.loss += m.log_z - gold_score;
    compiled.for_each_expected(m, [&](int id, double q) {
      out.gradient[id] += q;
    });
    compiled.for_each_fired(gold, [&](int id, double c) {
      out.gradient[id] -= c;
    });
  }
  double norm2 = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    norm2 += w[k] * w[k];
    out.gradient[k] += l2 * w[k];
  }
  out.loss += 0.5 * l2 * norm2;
  if (!std::isfinite(out.loss)) throw NumericError("numeric overflow");
  for (double g : out.gradient) {
    if (!std::isfinite(g)) throw NumericError("numeric overflow");
  }
  return out;
}

/// Features firing on the gold labelings of `data`, sorted by name.
inline std::vector<std::string> collect_features(
    const TagSet& tags, const FeatureTemplateSet& templates,
    std::span<const LabeledSequence> data) {
  std::set<std::string> names;
  for (const LabeledSequence& seq : data) {
    check_lengths(seq);
    for (const auto& l : seq.labels) tags.id(l);
    for (std::size_t i = 0; i < seq.labels.size(); ++i) {
      const std::string_view prev =
          i == 0 ? std::string_view{} : std::string_view(seq.labels[i - 1]);
      for (auto& name :
           templates.fire(seq.observations, i, seq.labels[i], prev)) {
        names.insert(std::move(name));
      }
    }
  }
  return {names.begin(), names.end()};
}

struct LinearTrainOptions {
  int epochs = 50;
  double learning_rate = 0.1;
  double l2 = 1.0;
  std::uint64_t seed = 1;
};

struct TrainReport {
  /// Full regularized objective after each epoch.
  std::vector<double> epoch_loss;
};

/// Reproducible in-place Fisher-Yates shuffle driven by a 64-bit Mersenne
/// twister (std::shuffle's draw sequence is implementation-defined).
inline void seeded_shuffle(std::vector<std::size_t>& items,
                           std::mt19937_64& rng) {
  for (std::size_t k = items.size(); k > 1; --k) {
    std::swap(items[k - 1], items[rng() % k]);
  }
}

/// Stochastic gradient descent on the regularized NLL. The per-example
/// objective carries l2 / N of the penalty; weights are kept as
/// scale * v so the shrinkage costs O(1) per step. Step size decays as
/// eta0 / (1 + eta0 * (l2 / N) * t).
inline LinearChainModel train_linear(const TagSet& tags,
                                     const FeatureTemplateSet& templates,
                                     std::span<const LabeledSequence> data,
                                     const LinearTrainOptions& options,
                                     TrainReport* report = nullptr) {
  if (data.empty()) throw DataError("no training sequences");
  for (const LabeledSequence& seq : data) {
    if (seq.observations.empty()) throw DataError("empty training sequence");
  }
  std::vector<std::string> names = collect_features(tags, templates, data);
  std::vector<double> zeros(names.size(), 0.0);
  LinearChainModel model(tags, templates.id(), std::move(names),
                         std::move(zeros));
  if (options.epochs <= 0) return model;

  std::vector<CompiledSequence> compiled;
  std::vector<std::vector<int>> gold;
  compiled.reserve(data.size());
  for (const LabeledSequence& seq : data) {
    compiled.emplace_back(model, templates, seq.observations);
    gold.push_back(tags.ids(seq.labels));
  }

  const double n = static_cast<double>(data.size());
  const double lambda = options.l2 / n;
  std::vector<double>& v = model.mutable_weights();
  double scale = 1.0;
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(data.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  double step = 0.0;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    seeded_shuffle(order, rng);
    for (std::size_t k : order) {
      const double eta =
          options.learning_rate / (1.0 + options.learning_rate * lambda * step);
      step += 1.0;
      const Marginals m = marginals(compiled[k].lattice(v, scale));
      if (!std::isfinite(m.log_z)) throw NumericError("numeric overflow");
      scale *= 1.0 - eta * lambda;
      if (scale < 1e-9) {
        for (double& x : v) x *= scale;
        scale = 1.0;
      }
      const double delta = eta / scale;
      compiled[k].for_each_expected(m, [&](int id, double q) {
        v[id] -= delta * q;
      });
      compiled[k].for_each_fired(gold[k], [&](int id, double c) {
        v[id] += delta * c;
      });
    }

    double loss = 0.0;
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    for (std::size_t k = 0; k < compiled.size(); ++k) {
      const Lattice lat = compiled[k].lattice(v, scale);
      loss += log_partition(lat) - lat.score(gold[k]);
    }
    loss += 0.5 * options.l2 * norm2 * scale * scale;
    if (!std::isfinite(loss) || loss > 1e12) {
      throw NumericError("training diverged at epoch " +
                         std::to_string(epoch + 1));
    }
    if (report != nullptr) report->epoch_loss.push_back(loss);
  }
  for (double& x : v) x *= scale;
  return model;
}

}  // namespace guwen::seqlabel

#endif  // GUWEN_SEQLABEL_LINEAR_HPP_
