#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "advlearn/alphabet.hpp"
#include "advlearn/regex.hpp"

namespace advlearn {

/// Nondeterministic automaton with optional ε-moves.
class Nfa {
 public:
  static constexpr Symbol kEpsilon = std::numeric_limits<Symbol>::max();

  struct Edge {
    Symbol symbol;  // kEpsilon for an ε-move
    State to;
  };

  explicit Nfa(std::size_t alphabet_size) : alphabet_size_(alphabet_size) {}

  State add_state();
  void add_edge(State from, Symbol symbol, State to);
  void add_initial(State q);
  void set_accepting(State q, bool value = true);

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t num_states() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges(State q) const { return edges_[q]; }
  const std::vector<State>& initial() const noexcept { return initial_; }
  bool is_accepting(State q) const { return accepting_[q]; }
  bool has_epsilon_moves() const;

  /// Adds the ε-closure of `set` to itself (bit set indexed by state).
  void close(std::vector<char>& set) const;
  std::vector<char> initial_set() const;
  std::vector<char> step(const std::vector<char>& set, Symbol a) const;
  bool accepts_any(const std::vector<char>& set) const;
  bool accepts(const Word& w) const;

  /// Equivalent automaton without ε-moves (same state ids, closed initial set).
  Nfa without_epsilon() const;

  /// Automaton for the reversed language.
  Nfa reversed() const;

 private:
  std::size_t alphabet_size_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<State> initial_;
  std::vector<char> accepting_;
};

/// Thompson-style construction; the result keeps its ε-moves.
Nfa regex_to_nfa(const Regex& e, std::size_t alphabet_size);

}  // namespace advlearn
