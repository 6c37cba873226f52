#pragma once

// Algorithms over DFAs: minimization, witness words, product searches,
// state subsumption, and reachability under regular constraints.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "advlearn/dfa.hpp"
#include "advlearn/nfa.hpp"
#include "advlearn/regex.hpp"

namespace advlearn {

/// States reachable from the initial state, in BFS order.
std::vector<State> reachable_states(const Dfa& d);

/// Drops unreachable states and renumbers the rest in BFS order
/// (symbols explored in alphabet order).
Dfa canonicalize(const Dfa& d);

/// Minimal equivalent DFA with canonical numbering.
Dfa minimize(const Dfa& d);

/// Shortest (then lexicographically least) word reaching `q`.
std::optional<Word> shortest_access_word(const Dfa& d, State q);

/// shortest_access_word for every state at once.
std::vector<std::optional<Word>> access_words(const Dfa& d);

/// Moore partition refinement that keeps every level, so that a shortest
/// distinguishing word can be read off for any pair of states.
class MooreRefinement {
 public:
  explicit MooreRefinement(const Dfa& d);

  /// Number of refinement levels (the last level is stable).
  std::size_t levels() const noexcept { return classes_.size(); }
  std::size_t class_of(State q) const { return classes_.back()[q]; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  bool equivalent(State q1, State q2) const { return class_of(q1) == class_of(q2); }

  /// Shortest, then lexicographically least, word v such that exactly one of
  /// δ̂(q1,v), δ̂(q2,v) accepts. nullopt iff the states are equivalent.
  std::optional<Word> distinguish(State q1, State q2) const;

 private:
  const Dfa* dfa_;
  std::vector<std::vector<std::size_t>> classes_;
  std::size_t num_classes_ = 0;
};

std::optional<Word> distinguishing_word(const Dfa& d, State q1, State q2);

/// Shortest word in the symmetric difference; nullopt iff equivalent.
/// Throws input_error when the alphabets differ.
std::optional<Word> shortest_counterexample(const Dfa& d1, const Dfa& d2);

/// The preorder s1 ≤ s2 ⟺ L_{s1} ⊆ L_{s2}, as a dense matrix.
class SubsumptionRelation {
 public:
  SubsumptionRelation(std::size_t n, std::vector<char> holds) : n_(n), holds_(std::move(holds)) {}

  std::size_t num_states() const noexcept { return n_; }
  bool holds(State s1, State s2) const { return holds_[s1 * n_ + s2] != 0; }
  std::vector<std::pair<State, State>> pairs() const;

 private:
  std::size_t n_;
  std::vector<char> holds_;
};

/// Greatest fixpoint, starting from {(s1,s2) : s1 accepting ⇒ s2 accepting}.
SubsumptionRelation subsumption_relation(const Dfa& d);

/// Shortest word in L_{s1} \ L_{s2}; nullopt iff s1 ≤ s2.
std::optional<Word> subsumption_witness(const Dfa& d, State s1, State s2);

/// States δ̂(q0,x) for x ∈ L(e), ascending.
std::vector<State> states_reachable_via(const Dfa& d, const Regex& e);

/// For every state, the shortest (then least) x in L(nfa) reaching it from
/// the initial state. `nfa` must be ε-free.
std::vector<std::optional<Word>> access_words_via(const Dfa& d, const Nfa& nfa);

/// Shortest y ∈ L(e) on which exactly one of q1, q2 accepts.
std::optional<Word> distinguished_within(const Dfa& d, State q1, State q2, const Regex& e);

/// As above with a precompiled ε-free automaton for the constraint.
std::optional<Word> distinguished_within(const Dfa& d, State q1, State q2, const Nfa& nfa);

/// All pairs (p1,p2) that some word of L(nfa) distinguishes; dense n×n matrix.
/// `nfa` must be ε-free. Computed by one backward sweep over d×d×nfa.
std::vector<char> pairs_distinguished_within(const Dfa& d, const Nfa& nfa);

}  // namespace advlearn
