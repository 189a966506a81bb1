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

// Log-space first-order lattices and the dynamic programs over them.
//
// A lattice of length n over T tags stores a node potential for every
// (position, tag) and an edge potential for every (position, previous tag,
// tag) with position >= 1. Anything that happens at the virtual START tag
// is folded into the position-0 node potentials. The score of a labeling
// is the sum of the potentials it visits; both chain models reduce to
// this form, so decoding and normalization are written once.

#ifndef GUWEN_SEQLABEL_LATTICE_HPP_
#define GUWEN_SEQLABEL_LATTICE_HPP_

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "guwen/error.hpp"

namespace guwen::seqlabel {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(sum(exp(values))), -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> values) {
  double peak = kNegInf;
  for (double v : values) peak = std::max(peak, v);
  if (peak == kNegInf) return kNegInf;
  if (std::isinf(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

class Lattice {
 public:
  Lattice() = default;
  Lattice(std::size_t length, std::size_t tags)
      : length_(length),
        tags_(tags),
        nodes_(length * tags, 0.0),
        edges_(length > 0 ? (length - 1) * tags * tags : 0, 0.0) {}

  std::size_t length() const { return length_; }
  std::size_t tags() const { return tags_; }

  double& node(std::size_t i, std::size_t t) { return nodes_[i * tags_ + t]; }
  double node(std::size_t i, std::size_t t) const {
    return nodes_[i * tags_ + t];
  }

  /// Edge into position i (i >= 1) from tag `prev` to tag `cur`.
  double& edge(std::size_t i, std::size_t prev, std::size_t cur) {
    assert(i >= 1);
    return edges_[((i - 1) * tags_ + prev) * tags_ + cur];
  }
  double edge(std::size_t i, std::size_t prev, std::size_t cur) const {
    assert(i >= 1);
    return edges_[((i - 1) * tags_ + prev) * tags_ + cur];
  }

  double score(std::span<const int> labels) const {
    assert(labels.size() == length_);
    double total = 0.0;
    for (std::size_t i = 0; i < length_; ++i) {
      total += node(i, labels[i]);
      if (i > 0) total += edge(i, labels[i - 1], labels[i]);
    }
    return total;
  }

 private:
  std::size_t length_ = 0;
  std::size_t tags_ = 0;
  std::vector<double> nodes_;
  std::vector<double> edges_;
};

/// Hard constraints on labelings: which tags may open or close a sequence
/// and which bigrams may occur. Forbidden choices score -inf.
struct TransitionMask {
  std::size_t tags = 0;
  std::vector<char> start;
  std::vector<char> end;
  std::vector<char> pair;  // pair[prev * tags + cur]

  static TransitionMask allow_all(std::size_t tags) {
    return {tags, std::vector<char>(tags, 1), std::vector<char>(tags, 1),
            std::vector<char>(tags * tags, 1)};
  }

  bool allowed(std::size_t prev, std::size_t cur) const {
    return pair[prev * tags + cur] != 0;
  }

  bool admissible(std::span<const int> labels) const {
    if (labels.empty()) return true;
    if (!start[labels.front()] || !end[labels.back()]) return false;
    for (std::size_t i = 1; i < labels.size(); ++i) {
      if (!allowed(labels[i - 1], labels[i])) return false;
    }
    return true;
  }
};

/// Relative slack within which two path scores count as tied. Equal
/// products of the same factors can differ in the last bits once summed
/// in a different order.
inline constexpr double kTieTolerance = 1e-12;

/// True when `s` beats `best` by more than the tie tolerance.
inline bool clearly_greater(double s, double best) {
  if (best == kNegInf) return s > best;
  return s > best + kTieTolerance * std::max(1.0, std::abs(best));
}

/// Highest-scoring labeling. Ties go to the lowest tag ordinal, both for
/// the final tag and for every back-pointer.
inline std::vector<int> viterbi(const Lattice& lattice,
                                const TransitionMask* mask = nullptr) {
  const std::size_t n = lattice.length();
  const std::size_t tags = lattice.tags();
  if (n == 0) return {};
  if (mask != nullptr && mask->tags != tags) {
    throw DataError("transition mask does not match the tag set");
  }

  std::vector<double> delta(n * tags, kNegInf);
  std::vector<int> back(n * tags, 0);
  for (std::size_t t = 0; t < tags; ++t) {
    if (mask == nullptr || mask->start[t]) delta[t] = lattice.node(0, t);
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t t = 0; t < tags; ++t) {
      double best = kNegInf;
      int arg = -1;
      for (std::size_t p = 0; p < tags; ++p) {
        if (mask != nullptr && !mask->allowed(p, t)) continue;
        const double s = delta[(i - 1) * tags + p] + lattice.edge(i, p, t);
        if (arg < 0 || clearly_greater(s, best)) best = s, arg = static_cast<int>(p);
      }
      back[i * tags + t] = std::max(arg, 0);
      delta[i * tags + t] = best + lattice.node(i, t);
    }
  }

  double best = kNegInf;
  int last = -1;
  for (std::size_t t = 0; t < tags; ++t) {
    if (mask != nullptr && !mask->end[t]) continue;
    const double s = delta[(n - 1) * tags + t];
    if (last < 0 ? s > best : clearly_greater(s, best)) {
      best = s, last = static_cast<int>(t);
    }
  }
  if (last < 0 || std::isnan(best)) {
    throw DataError("no admissible labeling");
  }

  std::vector<int> path(n);
  path[n - 1] = last;
  for (std::size_t i = n - 1; i > 0; --i) {
    path[i - 1] = back[i * tags + path[i]];
  }
  return path;
}

/// Forward scores alpha[i * tags + t] in log space.
inline std::vector<double> forward_scores(const Lattice& lattice) {
  const std::size_t n = lattice.length();
  const std::size_t tags = lattice.tags();
  std::vector<double> alpha(n * tags, kNegInf);
  std::vector<double> terms(tags);
  for (std::size_t t = 0; t < tags && n > 0; ++t) alpha[t] = lattice.node(0, t);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t t = 0; t < tags; ++t) {
      for (std::size_t p = 0; p < tags; ++p) {
        terms[p] = alpha[(i - 1) * tags + p] + lattice.edge(i, p, t);
      }
      alpha[i * tags + t] = log_sum_exp(terms) + lattice.node(i, t);
    }
  }
  return alpha;
}

/// Backward scores beta[i * tags + t] in log space.
inline std::vector<double> backward_scores(const Lattice& lattice) {
  const std::size_t n = lattice.length();
  const std::size_t tags = lattice.tags();
  std::vector<double> beta(n * tags, 0.0);
  std::vector<double> terms(tags);
  for (std::size_t i = n; i-- > 1;) {
    for (std::size_t p = 0; p < tags; ++p) {
      for (std::size_t t = 0; t < tags; ++t) {
        terms[t] = lattice.edge(i, p, t) + lattice.node(i, t) +
                   beta[i * tags + t];
      }
      beta[(i - 1) * tags + p] = log_sum_exp(terms);
    }
  }
  return beta;
}

/// log of the sum of exp(score) over every labeling.
inline double log_partition(const Lattice& lattice) {
  if (lattice.length() == 0) return 0.0;
  const std::vector<double> alpha = forward_scores(lattice);
  const std::size_t tags = lattice.tags();
  return log_sum_exp(std::span(alpha).subspan((lattice.length() - 1) * tags,
                                              tags));
}

/// Posterior node and edge probabilities under exp(score) / Z.
struct Marginals {
  double log_z = 0.0;
  std::vector<double> node;  // [i * tags + t]
  std::vector<double> edge;  // [((i - 1) * tags + prev) * tags + cur]
};

inline Marginals marginals(const Lattice& lattice) {
  const std::size_t n = lattice.length();
  const std::size_t tags = lattice.tags();
  Marginals m;
  if (n == 0) return m;
  const std::vector<double> alpha = forward_scores(lattice);
  const std::vector<double> beta = backward_scores(lattice);
  m.log_z = log_sum_exp(std::span(alpha).subspan((n - 1) * tags, tags));

  m.node.resize(n * tags);
  for (std::size_t k = 0; k < n * tags; ++k) {
    m.node[k] = std::exp(alpha[k] + beta[k] - m.log_z);
  }
  m.edge.resize((n - 1) * tags * tags);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t p = 0; p < tags; ++p) {
      for (std::size_t t = 0; t < tags; ++t) {
        m.edge[((i - 1) * tags + p) * tags + t] =
            std::exp(alpha[(i - 1) * tags + p] + lattice.edge(i, p, t) +
                     lattice.node(i, t) + beta[i * tags + t] - m.log_z);
      }
    }
  }
  return m;
}

/// Applies a mask by writing -inf into forbidden potentials.
inline void apply_mask(Lattice& lattice, const TransitionMask& mask) {
  const std::size_t n = lattice.length();
  const std::size_t tags = lattice.tags();
  for (std::size_t t = 0; t < tags && n > 0; ++t) {
    if (!mask.start[t]) lattice.node(0, t) = kNegInf;
    if (!mask.end[t]) lattice.node(n - 1, t) = kNegInf;
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t p = 0; p < tags; ++p) {
      for (std::size_t t = 0; t < tags; ++t) {
        if (!mask.allowed(p, t)) lattice.edge(i, p, t) = kNegInf;
      }
    }
  }
}

}  // namespace guwen::seqlabel

#endif  // GUWEN_SEQLABEL_LATTICE_HPP_
