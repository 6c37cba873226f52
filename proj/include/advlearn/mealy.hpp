#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "advlearn/alphabet.hpp"

namespace advlearn {

/// Complete Mealy machine: δ and λ are total over (state, input symbol).
class MealyMachine {
 public:
  MealyMachine(Alphabet inputs, Alphabet outputs, std::size_t num_states, State initial,
               std::vector<State> delta, std::vector<Symbol> lambda);

  const Alphabet& inputs() const noexcept { return inputs_; }
  const Alphabet& outputs() const noexcept { return outputs_; }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }
  State next(State q, Symbol a) const { return delta_[q * inputs_.size() + a]; }
  Symbol output(State q, Symbol a) const { return lambda_[q * inputs_.size() + a]; }
  const std::vector<State>& transitions() const noexcept { return delta_; }
  const std::vector<Symbol>& labels() const noexcept { return lambda_; }

  State run_from(State q, const Word& w) const;
  State run(const Word& w) const { return run_from(initial_, w); }

  /// The full output word f(w).
  Word transduce(const Word& w) const;

  friend bool operator==(const MealyMachine& a, const MealyMachine& b) {
    return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_ && a.num_states_ == b.num_states_ &&
           a.initial_ == b.initial_ && a.delta_ == b.delta_ && a.lambda_ == b.lambda_;
  }

 private:
  Alphabet inputs_;
  Alphabet outputs_;
  std::size_t num_states_;
  State initial_;
  std::vector<State> delta_;
  std::vector<Symbol> lambda_;
};

/// Last output letter on a non-empty input word. Throws input_error on ε.
Symbol last_output(const MealyMachine& m, const Word& w);

/// Last output letter along `w` read from state `q` (w non-empty).
Symbol last_output_from(const MealyMachine& m, State q, const Word& w);

/// Minimal equivalent machine, unreachable states removed, BFS numbering.
MealyMachine minimize(const MealyMachine& m);

/// Shortest non-empty word on which the last outputs of q1 and q2 differ.
std::optional<Word> distinguishing_word(const MealyMachine& m, State q1, State q2);

/// Shortest non-empty word on which the machines' last outputs differ.
std::optional<Word> shortest_counterexample(const MealyMachine& m1, const MealyMachine& m2);

}  // namespace advlearn
