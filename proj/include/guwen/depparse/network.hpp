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

// Feed-forward transition classifier: embedding lookup for the 48 feature
// slots, one cube-activated hidden layer, and a softmax over transitions.
//
//   x = [E(f_1); ...; E(f_48)]
//   h = (W1 x + b1)^3
//   p = softmax(W2 h)

#ifndef GUWEN_DEPPARSE_NETWORK_HPP_
#define GUWEN_DEPPARSE_NETWORK_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "guwen/depparse/features.hpp"
#include "guwen/error.hpp"

namespace guwen::depparse {

struct NetworkShape {
  std::size_t word_vocab = 0;
  std::size_t tag_vocab = 0;
  std::size_t label_vocab = 0;
  std::size_t embedding_dim = 50;
  std::size_t hidden = 200;
  std::size_t outputs = 0;

  std::size_t input_size() const { return kNumFeatures * embedding_dim; }

  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

/// Parameters, stored row-major. Also used as a gradient accumulator of
/// the same shape.
struct ParserNetwork {
  NetworkShape shape;
  std::vector<double> word_embedding;   // word_vocab x d
  std::vector<double> tag_embedding;    // tag_vocab x d
  std::vector<double> label_embedding;  // label_vocab x d
  std::vector<double> hidden_weight;    // hidden x input_size
  std::vector<double> hidden_bias;      // hidden
  std::vector<double> output_weight;    // outputs x hidden

  ParserNetwork() = default;

  explicit ParserNetwork(const NetworkShape& s)
      : shape(s),
        word_embedding(s.word_vocab * s.embedding_dim, 0.0),
        tag_embedding(s.tag_vocab * s.embedding_dim, 0.0),
        label_embedding(s.label_vocab * s.embedding_dim, 0.0),
        hidden_weight(s.hidden * s.input_size(), 0.0),
        hidden_bias(s.hidden, 0.0),
        output_weight(s.outputs * s.hidden, 0.0) {}

  /// Every parameter block in a fixed order.
  std::array<std::vector<double>*, 6> blocks() {
    return {&word_embedding, &tag_embedding,  &label_embedding,
            &hidden_weight,  &hidden_bias,    &output_weight};
  }
  std::array<const std::vector<double>*, 6> blocks() const {
    return {&word_embedding, &tag_embedding,  &label_embedding,
            &hidden_weight,  &hidden_bias,    &output_weight};
  }

  std::size_t num_parameters() const {
    std::size_t n = 0;
    for (const auto* b : blocks()) n += b->size();
    return n;
  }

  bool all_finite() const {
    for (const auto* b : blocks()) {
      for (double v : *b) {
        if (!std::isfinite(v)) return false;
      }
    }
    return true;
  }

  void set_zero() {
    for (auto* b : blocks()) std::fill(b->begin(), b->end(), 0.0);
  }

  /// Embedding row for feature slot `slot` holding id `id`.
  const double* embedding(std::size_t slot, int id) const {
    return table(slot).data() + static_cast<std::size_t>(id) * shape.embedding_dim;
  }
  double* embedding(std::size_t slot, int id) {
    return const_cast<double*>(std::as_const(*this).embedding(slot, id));
  }

  const std::vector<double>& table(std::size_t slot) const {
    if (slot < kWordSlots) return word_embedding;
    if (slot < 2 * kWordSlots) return tag_embedding;
    return label_embedding;
  }

  std::size_t table_size(std::size_t slot) const {
    if (slot < kWordSlots) return shape.word_vocab;
    if (slot < 2 * kWordSlots) return shape.tag_vocab;
    return shape.label_vocab;
  }

  friend bool operator==(const ParserNetwork&, const ParserNetwork&) = default;
};

/// Uniform draw in [lo, hi) from the top 53 bits of one generator output.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

/// Every parameter uniform in [-range, range], drawn block by block.
inline ParserNetwork init_network(const NetworkShape& shape, std::uint64_t seed,
                                  double range = 0.01) {
  ParserNetwork net(shape);
  std::mt19937_64 rng(seed);
  for (auto* block : net.blocks()) {
    for (double& v : *block) v = uniform(rng, -range, range);
  }
  return net;
}

namespace detail {

inline void check_ids(const ParserNetwork& net, const FeatureVector& ids) {
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    if (ids[k] < 0 || static_cast<std::size_t>(ids[k]) >= net.table_size(k)) {
      throw DataError("feature id out of range in slot " + std::to_string(k));
    }
  }
}

inline std::vector<double> embed(const ParserNetwork& net,
                                 const FeatureVector& ids) {
  const std::size_t d = net.shape.embedding_dim;
  std::vector<double> x(net.shape.input_size());
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    std::copy_n(net.embedding(k, ids[k]), d, x.begin() + k * d);
  }
  return x;
}

inline void softmax_in_place(std::vector<double>& v) {
  const double peak = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double& s : v) sum += (s = std::exp(s - peak));
  for (double& s : v) s /= sum;
}

/// Forward pass keeping the intermediates needed for backprop. Hidden
/// units with a zero entry in `keep` are skipped (dropout).
struct Activations {
  std::vector<double> input;
  std::vector<double> pre;     // W1 x + b1
  std::vector<double> hidden;  // keep * pre^3
  std::vector<double> probs;
};

inline Activations run(const ParserNetwork& net, const FeatureVector& ids,
                       std::span<const double> keep) {
  const std::size_t in = net.shape.input_size();
  const std::size_t hid = net.shape.hidden;
  const std::size_t outs = net.shape.outputs;
  Activations a;
  a.input = embed(net, ids);
  a.pre.assign(hid, 0.0);
  a.hidden.assign(hid, 0.0);
  for (std::size_t j = 0; j < hid; ++j) {
    if (!keep.empty() && keep[j] == 0.0) continue;
    const double* w = net.hidden_weight.data() + j * in;
    double z = net.hidden_bias[j];
    for (std::size_t k = 0; k < in; ++k) z += w[k] * a.input[k];
    a.pre[j] = z;
    a.hidden[j] = z * z * z * (keep.empty() ? 1.0 : keep[j]);
  }
  a.probs.assign(outs, 0.0);
  for (std::size_t t = 0; t < outs; ++t) {
    const double* w = net.output_weight.data() + t * hid;
    double s = 0.0;
    for (std::size_t j = 0; j < hid; ++j) s += w[j] * a.hidden[j];
    a.probs[t] = s;
  }
  softmax_in_place(a.probs);
  return a;
}

}  // namespace detail

/// Probability of every transition id; sums to 1.
inline std::vector<double> forward(const ParserNetwork& net,
                                   const FeatureVector& ids) {
  detail::check_ids(net, ids);
  return detail::run(net, ids, {}).probs;
}

/// Cross-entropy -log p(gold).
inline double cross_entropy(const ParserNetwork& net, const FeatureVector& ids,
                            int gold, std::span<const double> keep = {}) {
  detail::check_ids(net, ids);
  const auto a = detail::run(net, ids, keep);
  return -std::log(a.probs[gold]);
}

/// Adds d(-log p(gold))/d(theta) * weight into `grad` and returns the loss.
/// `keep` optionally scales each hidden unit (0 drops it).
inline double backprop(const ParserNetwork& net, const FeatureVector& ids,
                       int gold, ParserNetwork& grad,
                       std::span<const double> keep = {},
                       double weight = 1.0) {
  detail::check_ids(net, ids);
  const std::size_t in = net.shape.input_size();
  const std::size_t hid = net.shape.hidden;
  const std::size_t outs = net.shape.outputs;
  const std::size_t d = net.shape.embedding_dim;
  const auto a = detail::run(net, ids, keep);

  std::vector<double> d_scores(a.probs);
  d_scores[gold] -= 1.0;
  for (double& v : d_scores) v *= weight;

  std::vector<double> d_hidden(hid, 0.0);
  for (std::size_t t = 0; t < outs; ++t) {
    const double g = d_scores[t];
    const double* w = net.output_weight.data() + t * hid;
    double* gw = grad.output_weight.data() + t * hid;
    for (std::size_t j = 0; j < hid; ++j) {
      gw[j] += g * a.hidden[j];
      d_hidden[j] += g * w[j];
    }
  }

  std::vector<double> d_input(in, 0.0);
  for (std::size_t j = 0; j < hid; ++j) {
    if (!keep.empty() && keep[j] == 0.0) continue;
    const double z = a.pre[j];
    const double dz = d_hidden[j] * 3.0 * z * z * (keep.empty() ? 1.0 : keep[j]);
    if (dz == 0.0) continue;
    grad.hidden_bias[j] += dz;
    const double* w = net.hidden_weight.data() + j * in;
    double* gw = grad.hidden_weight.data() + j * in;
    for (std::size_t k = 0; k < in; ++k) {
      gw[k] += dz * a.input[k];
      d_input[k] += dz * w[k];
    }
  }

  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    double* row = grad.embedding(k, ids[k]);
    for (std::size_t e = 0; e < d; ++e) row[e] += d_input[k * d + e];
  }
  return -std::log(a.probs[gold]) * weight;
}

/// Per-parameter adaptive step: G += g^2, theta -= lr * g / sqrt(G + eps).
class AdaGrad {
 public:
  AdaGrad(const ParserNetwork& net, double learning_rate, double epsilon)
      : history_(net.shape), learning_rate_(learning_rate), epsilon_(epsilon) {}

  void step(ParserNetwork& net, const ParserNetwork& grad) {
    auto params = net.blocks();
    auto grads = grad.blocks();
    auto hist = history_.blocks();
    for (std::size_t b = 0; b < params.size(); ++b) {
      std::vector<double>& p = *params[b];
      const std::vector<double>& g = *grads[b];
      std::vector<double>& h = *hist[b];
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (g[k] == 0.0) continue;
        h[k] += g[k] * g[k];
        p[k] -= learning_rate_ * g[k] / std::sqrt(h[k] + epsilon_);
      }
    }
  }

 private:
  ParserNetwork history_;
  double learning_rate_;
  double epsilon_;
};

}  // namespace guwen::depparse

#endif  // GUWEN_DEPPARSE_NETWORK_HPP_
