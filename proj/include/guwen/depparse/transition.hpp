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

// Arc-standard transition system.
//
// A configuration holds a stack (ROOT at the bottom), a buffer of the
// remaining tokens in order, and the arcs built so far. Shift moves the
// buffer front onto the stack; LeftReduce(l) makes the stack top the head
// of the token below it and pops that token; RightReduce(l) makes the
// token below the head of the top and pops the top. ROOT takes its single
// dependent, labeled HED, only once the buffer is empty.

#ifndef GUWEN_DEPPARSE_TRANSITION_HPP_
#define GUWEN_DEPPARSE_TRANSITION_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "guwen/depparse/tree.hpp"
#include "guwen/error.hpp"

namespace guwen::depparse {

struct Transition {
  enum class Kind { kShift, kLeftReduce, kRightReduce };

  Kind kind = Kind::kShift;
  int label = -1;  // ordinal in the LabelSet; -1 for Shift

  static Transition shift() { return {}; }
  static Transition left(int label) { return {Kind::kLeftReduce, label}; }
  static Transition right(int label) { return {Kind::kRightReduce, label}; }

  /// Dense id: Shift = 0, LeftReduce(l) = 1 + l, RightReduce(l) = 1 + L + l.
  int id(std::size_t num_labels) const {
    switch (kind) {
      case Kind::kShift: return 0;
      case Kind::kLeftReduce: return 1 + label;
      default: return 1 + static_cast<int>(num_labels) + label;
    }
  }

  static Transition from_id(int id, std::size_t num_labels) {
    const int l = static_cast<int>(num_labels);
    if (id == 0) return shift();
    if (id <= l) return left(id - 1);
    return right(id - 1 - l);
  }

  std::string str(const LabelSet& labels) const {
    switch (kind) {
      case Kind::kShift: return "Shift";
      case Kind::kLeftReduce: return "LeftReduce(" + labels.name(label) + ")";
      default: return "RightReduce(" + labels.name(label) + ")";
    }
  }

  friend bool operator==(const Transition&, const Transition&) = default;
};

inline std::size_t num_transitions(std::size_t num_labels) {
  return 1 + 2 * num_labels;
}

class Configuration {
 public:
  explicit Configuration(int n)
      : n_(n), next_(1), stack_{kRoot}, heads_(n + 1, -1),
        labels_(n + 1, -1), children_(n + 1) {}

  int size() const { return n_; }
  const std::vector<int>& stack() const { return stack_; }
  int buffer_size() const { return n_ - next_ + 1; }
  bool buffer_empty() const { return next_ > n_; }

  /// k-th element from the stack top (0 = top), or -1.
  int stack_at(int k) const {
    const int size = static_cast<int>(stack_.size());
    return k < size ? stack_[size - 1 - k] : -1;
  }
  /// k-th element of the buffer (0 = front), or -1.
  int buffer_at(int k) const {
    return next_ + k <= n_ ? next_ + k : -1;
  }

  int head(int token) const { return heads_[token]; }
  int label(int token) const { return labels_[token]; }
  const std::vector<int>& children(int token) const { return children_[token]; }

  /// `which`-th (1-based) left dependent counted from the far left, or -1.
  int leftmost_child(int token, int which = 1) const {
    if (token < 0) return -1;
    int found = 0;
    for (int c = 1; c < token; ++c) {
      if (heads_[c] == token && ++found == which) return c;
    }
    return -1;
  }

  /// `which`-th (1-based) right dependent counted from the far right, or -1.
  int rightmost_child(int token, int which = 1) const {
    if (token < 0) return -1;
    int found = 0;
    for (int c = n_; c > token; --c) {
      if (heads_[c] == token && ++found == which) return c;
    }
    return -1;
  }

  void shift() { stack_.push_back(next_++); }

  void attach(int head, int dependent, int label) {
    heads_[dependent] = head;
    labels_[dependent] = label;
    children_[head].push_back(dependent);
  }

  void pop_at(int k) { stack_.erase(stack_.end() - 1 - k); }

  /// Arcs built so far, as a tree (labels resolved through `labels`).
  DependencyTree tree(const LabelSet& labels) const {
    DependencyTree out;
    out.n = n_;
    for (int d = 1; d <= n_; ++d) {
      out.arcs.push_back({heads_[d], d,
                          labels_[d] < 0 ? std::string() : labels.name(labels_[d])});
    }
    return out;
  }

 private:
  int n_;
  int next_;
  std::vector<int> stack_;
  std::vector<int> heads_;
  std::vector<int> labels_;
  std::vector<std::vector<int>> children_;
};

inline bool is_terminal(const Configuration& c) {
  return c.buffer_empty() && c.stack().size() == 1;
}

/// Empty when `t` is legal, otherwise the violated condition.
inline std::string illegality(const Configuration& c, const Transition& t,
                              const LabelSet& labels) {
  const int hed = labels.id(kHeadLabel);
  if (t.kind == Transition::Kind::kShift) {
    return c.buffer_empty() ? "Shift needs a non-empty buffer" : "";
  }
  if (t.label < 0 || t.label >= static_cast<int>(labels.size())) {
    return "unknown label";
  }
  if (c.stack().size() < 2) return "reduce needs two stack elements";
  const bool second_is_root = c.stack_at(1) == kRoot;
  if (t.kind == Transition::Kind::kLeftReduce) {
    if (second_is_root) return "LeftReduce cannot make ROOT a dependent";
    if (t.label == hed) return "HED is reserved for the arc from ROOT";
    return "";
  }
  if (second_is_root) {
    if (!c.buffer_empty()) return "ROOT attaches only once the buffer is empty";
    if (t.label != hed) return "the arc from ROOT must be labeled HED";
    return "";
  }
  if (t.label == hed) return "HED is reserved for the arc from ROOT";
  return "";
}

inline std::vector<Transition> legal_transitions(const Configuration& c,
                                                 const LabelSet& labels) {
  std::vector<Transition> out;
  if (!c.buffer_empty()) out.push_back(Transition::shift());
  const int count = static_cast<int>(labels.size());
  for (int l = 0; l < count; ++l) {
    if (illegality(c, Transition::left(l), labels).empty()) {
      out.push_back(Transition::left(l));
    }
  }
  for (int l = 0; l < count; ++l) {
    if (illegality(c, Transition::right(l), labels).empty()) {
      out.push_back(Transition::right(l));
    }
  }
  return out;
}

inline void apply_transition(Configuration& c, const Transition& t,
                             const LabelSet& labels) {
  if (const std::string why = illegality(c, t, labels); !why.empty()) {
    throw DataError("illegal transition " +
                    (t.label >= static_cast<int>(labels.size())
                         ? std::string("(bad label)")
                         : t.str(labels)) +
                    ": " + why);
  }
  switch (t.kind) {
    case Transition::Kind::kShift:
      c.shift();
      break;
    case Transition::Kind::kLeftReduce:
      c.attach(c.stack_at(0), c.stack_at(1), t.label);
      c.pop_at(1);
      break;
    case Transition::Kind::kRightReduce:
      c.attach(c.stack_at(1), c.stack_at(0), t.label);
      c.pop_at(0);
      break;
  }
}

/// Static arc-standard oracle. Reduces left when the top heads the second
/// element, right when the second heads the top and the top has all its
/// dependents, and shifts otherwise. Produces exactly 2n transitions.
inline std::vector<Transition> oracle_sequence(const DependencyTree& gold,
                                               const LabelSet& labels) {
  validate_tree(gold);
  if (!is_projective(gold)) throw DataError("non-projective tree");
  std::vector<int> pending(gold.n + 1, 0);
  for (const auto& arc : gold.arcs) ++pending[arc.head];

  Configuration c(gold.n);
  std::vector<Transition> out;
  out.reserve(2 * gold.n);
  while (!is_terminal(c)) {
    Transition t = Transition::shift();
    if (c.stack().size() >= 2) {
      const int top = c.stack_at(0);
      const int second = c.stack_at(1);
      if (second != kRoot && gold.head(second) == top) {
        t = Transition::left(labels.id(gold.label(second)));
      } else if (gold.head(top) == second && pending[top] == 0) {
        t = Transition::right(labels.id(gold.label(top)));
      }
    }
    if (t.kind != Transition::Kind::kShift) {
      --pending[t.kind == Transition::Kind::kLeftReduce ? c.stack_at(0)
                                                        : c.stack_at(1)];
    }
    apply_transition(c, t, labels);
    out.push_back(t);
  }
  return out;
}

}  // namespace guwen::depparse

#endif  // GUWEN_DEPPARSE_TRANSITION_HPP_
