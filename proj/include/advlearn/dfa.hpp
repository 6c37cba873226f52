#pragma once

#include <cstddef>
#include <vector>

#include "advlearn/alphabet.hpp"

namespace advlearn {

/// Complete deterministic automaton. States are 0..n-1; the transition
/// table is stored row-major by state.
class Dfa {
 public:
  Dfa(Alphabet alphabet, std::size_t num_states, State initial, std::vector<bool> accepting,
      std::vector<State> delta);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return accepting_.size(); }
  State initial() const noexcept { return initial_; }
  bool is_accepting(State q) const { return accepting_[q]; }
  const std::vector<bool>& accepting() const noexcept { return accepting_; }
  State next(State q, Symbol a) const { return delta_[q * alphabet_.size() + a]; }
  const std::vector<State>& transitions() const noexcept { return delta_; }

  /// δ̂(q, w). Throws input_error on a foreign symbol.
  State run_from(State q, const Word& w) const;
  State run(const Word& w) const { return run_from(initial_, w); }
  bool accepts(const Word& w) const { return is_accepting(run(w)); }

  friend bool operator==(const Dfa& a, const Dfa& b) {
    return a.alphabet_ == b.alphabet_ && a.initial_ == b.initial_ && a.accepting_ == b.accepting_ &&
           a.delta_ == b.delta_;
  }

 private:
  Alphabet alphabet_;
  State initial_;
  std::vector<bool> accepting_;
  std::vector<State> delta_;
};

inline State run_dfa(const Dfa& d, const Word& w) { return d.run(w); }
inline bool accepts(const Dfa& d, const Word& w) { return d.accepts(w); }

/// DFA whose transition function may be undefined (kNoState).
class PartialDfa {
 public:
  PartialDfa(Alphabet alphabet, std::size_t num_states, State initial, std::vector<bool> accepting,
             std::vector<State> delta);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return accepting_.size(); }
  State initial() const noexcept { return initial_; }
  bool is_accepting(State q) const { return accepting_[q]; }
  const std::vector<bool>& accepting() const noexcept { return accepting_; }
  State next(State q, Symbol a) const { return delta_[q * alphabet_.size() + a]; }
  bool defined(State q, Symbol a) const { return next(q, a) != kNoState; }
  const std::vector<State>& transitions() const noexcept { return delta_; }
  std::size_t num_defined() const;

  /// kNoState if the run leaves the defined part.
  State run_from(State q, const Word& w) const;
  State run(const Word& w) const { return run_from(initial_, w); }

  /// The same automaton viewed as total, if every transition is defined.
  bool is_total() const { return num_defined() == delta_.size(); }
  Dfa to_total() const;

  friend bool operator==(const PartialDfa& a, const PartialDfa& b) {
    return a.alphabet_ == b.alphabet_ && a.initial_ == b.initial_ && a.accepting_ == b.accepting_ &&
           a.delta_ == b.delta_;
  }

 private:
  Alphabet alphabet_;
  State initial_;
  std::vector<bool> accepting_;
  std::vector<State> delta_;
};

}  // namespace advlearn
