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

// Generative chain model: P(L, S) = p(l1) * prod_i p(l_i | l_i-1) p(w_i | l_i).

#ifndef GUWEN_SEQLABEL_GENERATIVE_HPP_
#define GUWEN_SEQLABEL_GENERATIVE_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/seqlabel/lattice.hpp"
#include "guwen/seqlabel/tagset.hpp"

namespace guwen::seqlabel {

class GenerativeChainModel {
 public:
  GenerativeChainModel() = default;

  /// `symbols` must be sorted and unique. Emission rows have
  /// symbols.size() + 1 entries; the last one is the unknown-symbol mass.
  GenerativeChainModel(TagSet tags, std::vector<std::string> symbols,
                       std::vector<double> initial,
                       std::vector<double> transition,
                       std::vector<double> emission)
      : tags_(std::move(tags)),
        symbols_(std::move(symbols)),
        initial_(std::move(initial)),
        transition_(std::move(transition)),
        emission_(std::move(emission)) {
    const std::size_t t = tags_.size();
    if (initial_.size() != t || transition_.size() != t * t ||
        emission_.size() != t * (symbols_.size() + 1)) {
      throw ModelError("generative model tables have inconsistent sizes");
    }
    for (std::size_t k = 0; k < symbols_.size(); ++k) {
      if (!index_.emplace(symbols_[k], k).second) {
        throw ModelError("duplicate symbol '" + symbols_[k] + "'");
      }
    }
  }

  const TagSet& tags() const { return tags_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t unknown_index() const { return symbols_.size(); }

  /// Column of `symbol` in the emission table, or unknown_index().
  std::size_t symbol_index(const std::string& symbol) const {
    const auto it = index_.find(symbol);
    return it == index_.end() ? unknown_index() : it->second;
  }

  double initial(std::size_t tag) const { return initial_[tag]; }
  double transition(std::size_t prev, std::size_t cur) const {
    return transition_[prev * tags_.size() + cur];
  }
  double emission(std::size_t tag, std::size_t symbol) const {
    return emission_[tag * (symbols_.size() + 1) + symbol];
  }
  double emission(std::size_t tag, const std::string& symbol) const {
    return emission(tag, symbol_index(symbol));
  }

  const std::vector<double>& initial_table() const { return initial_; }
  const std::vector<double>& transition_table() const { return transition_; }
  const std::vector<double>& emission_table() const { return emission_; }

  /// Log potentials of every labeling of `observations`.
  Lattice lattice(std::span<const std::string> observations) const {
    const std::size_t n = observations.size();
    const std::size_t tags = tags_.size();
    Lattice lat(n, tags);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t sym = symbol_index(observations[i]);
      for (std::size_t t = 0; t < tags; ++t) {
        lat.node(i, t) = std::log(emission(t, sym));
        if (i == 0) lat.node(i, t) += std::log(initial_[t]);
      }
      if (i == 0) continue;
      for (std::size_t p = 0; p < tags; ++p) {
        for (std::size_t t = 0; t < tags; ++t) {
          lat.edge(i, p, t) = std::log(transition(p, t));
        }
      }
    }
    return lat;
  }

 private:
  TagSet tags_;
  std::vector<std::string> symbols_;
  std::map<std::string, std::size_t> index_;
  std::vector<double> initial_;
  std::vector<double> transition_;
  std::vector<double> emission_;
};

namespace detail {

/// Normalizes a row of counts in place after adding `alpha` to each entry.
/// A row with no mass at all becomes uniform.
inline void smooth_row(std::span<double> row, double alpha) {
  double total = 0.0;
  for (double& v : row) total += (v += alpha);
  if (total <= 0.0) {
    for (double& v : row) v = 1.0 / static_cast<double>(row.size());
    return;
  }
  for (double& v : row) v /= total;
}

}  // namespace detail

/// Add-alpha smoothed relative frequencies. The unknown-symbol column
/// receives only the smoothing mass.
inline GenerativeChainModel train_generative(
    const TagSet& tags, std::span<const LabeledSequence> data, double alpha) {
  if (data.empty()) throw DataError("no training sequences");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DataError("smoothing constant must be finite and >= 0");
  }
  std::set<std::string> vocabulary;
  for (const LabeledSequence& seq : data) {
    check_lengths(seq);
    if (seq.observations.empty()) throw DataError("empty training sequence");
    vocabulary.insert(seq.observations.begin(), seq.observations.end());
  }
  std::vector<std::string> symbols(vocabulary.begin(), vocabulary.end());
  std::map<std::string, std::size_t> column;
  for (std::size_t k = 0; k < symbols.size(); ++k) column[symbols[k]] = k;

  const std::size_t t = tags.size();
  const std::size_t width = symbols.size() + 1;
  std::vector<double> initial(t, 0.0);
  std::vector<double> transition(t * t, 0.0);
  std::vector<double> emission(t * width, 0.0);
  for (const LabeledSequence& seq : data) {
    const std::vector<int> labels = tags.ids(seq.labels);
    initial[labels[0]] += 1.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      emission[labels[i] * width + column[seq.observations[i]]] += 1.0;
      if (i > 0) transition[labels[i - 1] * t + labels[i]] += 1.0;
    }
  }

  detail::smooth_row(initial, alpha);
  for (std::size_t p = 0; p < t; ++p) {
    detail::smooth_row(std::span(transition).subspan(p * t, t), alpha);
    detail::smooth_row(std::span(emission).subspan(p * width, width), alpha);
  }
  return GenerativeChainModel(tags, std::move(symbols), std::move(initial),
                              std::move(transition), std::move(emission));
}

/// The factorized product itself, computed in linear space.
inline double joint_probability(const GenerativeChainModel& model,
                                const LabeledSequence& seq) {
  check_lengths(seq);
  const std::vector<int> labels = model.tags().ids(seq.labels);
  if (labels.empty()) return 1.0;
  double p = model.initial(labels[0]);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) p *= model.transition(labels[i - 1], labels[i]);
    p *= model.emission(labels[i], seq.observations[i]);
  }
  return p;
}

inline std::vector<std::string> viterbi(
    const GenerativeChainModel& model,
    std::span<const std::string> observations,
    const TransitionMask* mask = nullptr) {
  if (observations.empty()) throw DataError("empty observation sequence");
  return model.tags().names_of(viterbi(model.lattice(observations), mask));
}

}  // namespace guwen::seqlabel

#endif  // GUWEN_SEQLABEL_GENERATIVE_HPP_
