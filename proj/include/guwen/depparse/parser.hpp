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

// Greedy parsing, training and persistence for the neural arc-standard
// parser.

#ifndef GUWEN_DEPPARSE_PARSER_HPP_
#define GUWEN_DEPPARSE_PARSER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "guwen/depparse/conllu.hpp"
#include "guwen/depparse/features.hpp"
#include "guwen/depparse/network.hpp"
#include "guwen/depparse/transition.hpp"
#include "guwen/depparse/tree.hpp"
#include "guwen/error.hpp"
#include "guwen/textio.hpp"

namespace guwen::depparse {

struct ParserModel {
  LabelSet labels;
  Vocabulary vocab;
  ParserNetwork network;

  friend bool operator==(const ParserModel& a, const ParserModel& b) {
    return a.labels == b.labels && a.vocab.words() == b.vocab.words() &&
           a.vocab.tags() == b.vocab.tags() && a.network == b.network;
  }
};

/// Applies the most probable legal transition until the configuration is
/// terminal. Ties go to the lowest transition id. `trace`, when given,
/// receives every transition taken.
inline DependencyTree greedy_parse(const ParserModel& model,
                                   const TaggedSentence& sentence,
                                   std::vector<Transition>* trace = nullptr) {
  if (sentence.pos.size() != sentence.words.size()) {
    throw DataError("words and tags differ in length");
  }
  const std::size_t num_labels = model.labels.size();
  Configuration c(static_cast<int>(sentence.size()));
  while (!is_terminal(c)) {
    const std::vector<Transition> legal = legal_transitions(c, model.labels);
    Transition best = legal.front();
    if (legal.size() > 1) {
      const auto probs =
          forward(model.network, extract_features(c, sentence, model.vocab));
      double best_p = -1.0;
      for (const Transition& t : legal) {
        const double p = probs[t.id(num_labels)];
        if (p > best_p) best_p = p, best = t;
      }
    }
    apply_transition(c, best, model.labels);
    if (trace != nullptr) trace->push_back(best);
  }
  return c.tree(model.labels);
}

struct AttachmentScores {
  double uas = 0.0;
  double las = 0.0;
};

/// Fraction of tokens with the right head (UAS) and right head and label
/// (LAS), pooled over all sentences.
inline AttachmentScores attachment_scores(
    std::span<const DependencyTree> predicted,
    std::span<const DependencyTree> gold) {
  if (predicted.size() != gold.size()) {
    throw DataError("predicted and gold tree counts differ");
  }
  std::size_t tokens = 0;
  std::size_t heads = 0;
  std::size_t both = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (predicted[s].n != gold[s].n) {
      throw DataError("tree " + std::to_string(s) + " lengths differ");
    }
    for (int d = 1; d <= gold[s].n; ++d) {
      ++tokens;
      if (predicted[s].head(d) != gold[s].head(d)) continue;
      ++heads;
      if (predicted[s].label(d) == gold[s].label(d)) ++both;
    }
  }
  if (tokens == 0) throw DataError("no tokens to score");
  return {static_cast<double>(heads) / static_cast<double>(tokens),
          static_cast<double>(both) / static_cast<double>(tokens)};
}

struct ParserTrainOptions {
  int epochs = 100;
  double learning_rate = 0.01;
  double adagrad_epsilon = 1e-6;
  double dropout = 0.5;
  double l2 = 1e-8;
  std::size_t batch_size = 32;
  std::size_t embedding_dim = 50;
  std::size_t hidden = 200;
  double init_range = 0.01;
  std::uint64_t seed = 1;
};

struct ParserTrainReport {
  std::size_t examples = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
  /// Mean cross-entropy over each epoch's examples (with dropout).
  std::vector<double> epoch_loss;
  int epochs_run = 0;
};

/// Called after every epoch with (epoch number from 1, current model);
/// returning false stops training early.
using EpochCallback = std::function<bool(int, const ParserModel&)>;

/// Labels of the default relation set followed by unseen ones, in order of
/// first appearance.
inline LabelSet labels_for(std::span<const TreebankEntry> treebank) {
  std::vector<std::string> names = default_labels().names();
  for (const auto& e : treebank) {
    for (const auto& arc : e.tree.arcs) {
      if (std::find(names.begin(), names.end(), arc.label) == names.end()) {
        names.push_back(arc.label);
      }
    }
  }
  return LabelSet(std::move(names));
}

/// Cross-entropy training on the static-oracle transitions of every
/// projective tree. Non-projective trees are skipped and reported.
/// Mini-batch AdaGrad with inverted dropout on the hidden units; the
/// seed drives initialization, shuffling and dropout.
inline ParserModel train_parser(std::span<const TreebankEntry> treebank,
                                const ParserTrainOptions& options,
                                ParserTrainReport* report = nullptr,
                                const EpochCallback& on_epoch = {}) {
  ParserTrainReport local;
  ParserTrainReport& rep = report != nullptr ? *report : local;

  std::vector<const TreebankEntry*> usable;
  for (std::size_t k = 0; k < treebank.size(); ++k) {
    const auto& e = treebank[k];
    validate_tree(e.tree);
    if (e.sentence.words.size() != static_cast<std::size_t>(e.tree.n) ||
        e.sentence.pos.size() != e.sentence.words.size()) {
      throw DataError("treebank sentence " + std::to_string(k + 1) +
                      ": tokens and tree differ in length");
    }
    if (!is_projective(e.tree)) {
      ++rep.skipped;
      rep.warnings.push_back("skipped non-projective tree #" +
                             std::to_string(k + 1));
      continue;
    }
    usable.push_back(&e);
  }

  ParserModel model;
  model.labels = labels_for(treebank);
  std::vector<std::string> words;
  std::vector<std::string> tags;
  for (const auto* e : usable) {
    words.insert(words.end(), e->sentence.words.begin(), e->sentence.words.end());
    tags.insert(tags.end(), e->sentence.pos.begin(), e->sentence.pos.end());
  }
  model.vocab = Vocabulary(std::move(words), std::move(tags));

  NetworkShape shape;
  shape.word_vocab = model.vocab.word_table_size();
  shape.tag_vocab = model.vocab.tag_table_size();
  shape.label_vocab = model.labels.size() + 1;
  shape.embedding_dim = options.embedding_dim;
  shape.hidden = options.hidden;
  shape.outputs = num_transitions(model.labels.size());
  model.network = init_network(shape, options.seed, options.init_range);

  std::vector<std::pair<FeatureVector, int>> examples;
  for (const auto* e : usable) {
    Configuration c(e->tree.n);
    for (const Transition& t : oracle_sequence(e->tree, model.labels)) {
      examples.emplace_back(extract_features(c, e->sentence, model.vocab),
                            t.id(model.labels.size()));
      apply_transition(c, t, model.labels);
    }
  }
  rep.examples = examples.size();
  if (options.epochs <= 0 || examples.empty()) return model;
  if (!(options.dropout >= 0.0 && options.dropout < 1.0)) {
    throw DataError("dropout must lie in [0, 1)");
  }

  std::mt19937_64 rng(options.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> order(examples.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  AdaGrad adagrad(model.network, options.learning_rate,
                  options.adagrad_epsilon);
  ParserNetwork grad(shape);
  std::vector<double> keep(shape.hidden, 1.0);
  const double kept_scale = 1.0 / (1.0 - options.dropout);
  const std::size_t batch = std::max<std::size_t>(1, options.batch_size);

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1], order[rng() % k]);
    }
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t stop = std::min(order.size(), start + batch);
      const double weight = 1.0 / static_cast<double>(stop - start);
      grad.set_zero();
      for (std::size_t k = start; k < stop; ++k) {
        for (double& m : keep) {
          m = uniform(rng, 0.0, 1.0) < options.dropout ? 0.0 : kept_scale;
        }
        const auto& [ids, gold] = examples[order[k]];
        epoch_loss += backprop(model.network, ids, gold, grad, keep, weight) /
                      weight;
      }
      if (options.l2 > 0.0) {
        auto params = model.network.blocks();
        auto grads = grad.blocks();
        for (std::size_t b = 0; b < params.size(); ++b) {
          for (std::size_t k = 0; k < params[b]->size(); ++k) {
            (*grads[b])[k] += options.l2 * (*params[b])[k];
          }
        }
      }
      adagrad.step(model.network, grad);
    }
    epoch_loss /= static_cast<double>(examples.size());
    if (!std::isfinite(epoch_loss) || !model.network.all_finite()) {
      throw NumericError("parser training diverged at epoch " +
                         std::to_string(epoch));
    }
    rep.epoch_loss.push_back(epoch_loss);
    rep.epochs_run = epoch;
    if (on_epoch && !on_epoch(epoch, model)) break;
  }
  return model;
}

/// UAS/LAS of greedy parses of `treebank` against its own trees.
inline AttachmentScores evaluate(const ParserModel& model,
                                 std::span<const TreebankEntry> treebank) {
  std::vector<DependencyTree> predicted;
  std::vector<DependencyTree> gold;
  for (const auto& e : treebank) {
    predicted.push_back(greedy_parse(model, e.sentence));
    gold.push_back(e.tree);
  }
  return attachment_scores(predicted, gold);
}

inline constexpr std::string_view kParserMagic = "guwen-parser";
inline constexpr int kParserFormatVersion = 1;

namespace detail {

inline void write_names(std::ostream& out, std::string_view key,
                        const std::vector<std::string>& names) {
  out << key << ' ' << names.size() << '\n';
  for (const auto& n : names) out << textio::escape(n) << '\n';
}

inline std::vector<std::string> read_names(textio::LineReader& in,
                                           std::string_view key) {
  const std::size_t n = in.count(key);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back(textio::unescape(in.next()));
  }
  return names;
}

inline void write_matrix(std::ostream& out, std::string_view name,
                         const std::vector<double>& m, std::size_t cols) {
  const std::size_t rows = cols == 0 ? 0 : m.size() / cols;
  out << name << ' ' << rows << ' ' << cols << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    out << textio::join_numbers(m.data() + r * cols, cols) << '\n';
  }
}

inline void read_matrix(textio::LineReader& in, std::string_view name,
                        std::vector<double>& m, std::size_t cols) {
  const std::size_t rows = cols == 0 ? 0 : m.size() / cols;
  const std::string expected = std::string(name) + ' ' + std::to_string(rows) +
                               ' ' + std::to_string(cols);
  if (in.next() != expected) {
    throw ModelError("expected '" + expected + "' at line " +
                     std::to_string(in.line_no()));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = in.numbers(cols);
    std::copy(row.begin(), row.end(), m.begin() + r * cols);
  }
}

}  // namespace detail

inline void save(std::ostream& out, const ParserModel& model) {
  const auto& net = model.network;
  const auto& s = net.shape;
  out << kParserMagic << ' ' << kParserFormatVersion << '\n';
  detail::write_names(out, "labels", model.labels.names());
  detail::write_names(out, "words", model.vocab.words());
  detail::write_names(out, "tags", model.vocab.tags());
  out << "dims " << s.embedding_dim << ' ' << s.hidden << '\n';
  detail::write_matrix(out, "word_embedding", net.word_embedding, s.embedding_dim);
  detail::write_matrix(out, "tag_embedding", net.tag_embedding, s.embedding_dim);
  detail::write_matrix(out, "label_embedding", net.label_embedding,
                       s.embedding_dim);
  detail::write_matrix(out, "hidden_weight", net.hidden_weight, s.input_size());
  detail::write_matrix(out, "hidden_bias", net.hidden_bias, s.hidden);
  detail::write_matrix(out, "output_weight", net.output_weight, s.hidden);
}

inline ParserModel load_parser(std::istream& in) {
  textio::LineReader reader(in);
  const std::string header = reader.next();
  if (header != std::string(kParserMagic) + ' ' +
                    std::to_string(kParserFormatVersion)) {
    throw ModelError("not a parser model (header '" + header + "')");
  }
  ParserModel model;
  try {
    model.labels = LabelSet(detail::read_names(reader, "labels"));
    model.labels.id(kHeadLabel);
  } catch (const DataError& e) {
    throw ModelError(std::string("bad label set: ") + e.what());
  }
  auto words = detail::read_names(reader, "words");
  auto tags = detail::read_names(reader, "tags");
  model.vocab = Vocabulary(std::move(words), std::move(tags));
  const auto dims = textio::split(reader.field("dims"), ' ');
  if (dims.size() != 2) throw ModelError("malformed dims line");

  NetworkShape shape;
  shape.word_vocab = model.vocab.word_table_size();
  shape.tag_vocab = model.vocab.tag_table_size();
  shape.label_vocab = model.labels.size() + 1;
  shape.embedding_dim = static_cast<std::size_t>(textio::parse_int(dims[0]));
  shape.hidden = static_cast<std::size_t>(textio::parse_int(dims[1]));
  shape.outputs = num_transitions(model.labels.size());
  ParserNetwork net(shape);
  detail::read_matrix(reader, "word_embedding", net.word_embedding,
                      shape.embedding_dim);
  detail::read_matrix(reader, "tag_embedding", net.tag_embedding,
                      shape.embedding_dim);
  detail::read_matrix(reader, "label_embedding", net.label_embedding,
                      shape.embedding_dim);
  detail::read_matrix(reader, "hidden_weight", net.hidden_weight,
                      shape.input_size());
  detail::read_matrix(reader, "hidden_bias", net.hidden_bias, shape.hidden);
  detail::read_matrix(reader, "output_weight", net.output_weight, shape.hidden);
  if (!net.all_finite()) throw ModelError("non-finite parser parameter");
  model.network = std::move(net);
  return model;
}

inline std::string to_string(const ParserModel& model) {
  std::ostringstream out;
  save(out, model);
  return out.str();
}

}  // namespace guwen::depparse

#endif  // GUWEN_DEPPARSE_PARSER_HPP_
