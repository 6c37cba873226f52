#include "advlearn/dfa.hpp"

#include <string>

#include "advlearn/error.hpp"

namespace advlearn {

namespace {

void validate_shape(const Alphabet& alphabet, std::size_t n, State initial,
                    const std::vector<bool>& accepting, const std::vector<State>& delta,
                    bool allow_undefined) {
  if (n == 0) throw input_error("automaton needs at least one state");
  if (initial >= n) throw input_error("initial state out of range");
  if (accepting.size() != n) throw input_error("accepting vector size mismatch");
  if (delta.size() != n * alphabet.size()) throw input_error("transition table size mismatch");
  for (State t : delta) {
    if (t == kNoState && allow_undefined) continue;
    if (t >= n) throw input_error("transition target out of range: " + std::to_string(t));
  }
}

}  // namespace

Dfa::Dfa(Alphabet alphabet, std::size_t num_states, State initial, std::vector<bool> accepting,
         std::vector<State> delta)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  validate_shape(alphabet_, num_states, initial_, accepting_, delta_, false);
}

State Dfa::run_from(State q, const Word& w) const {
  if (q >= num_states()) throw input_error("state out of range");
  const std::size_t k = alphabet_.size();
  for (Symbol a : w) {
    if (a >= k) throw input_error("symbol index " + std::to_string(a) + " not in alphabet");
    q = delta_[q * k + a];
  }
  return q;
}

PartialDfa::PartialDfa(Alphabet alphabet, std::size_t num_states, State initial,
                       std::vector<bool> accepting, std::vector<State> delta)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  validate_shape(alphabet_, num_states, initial_, accepting_, delta_, true);
}

std::size_t PartialDfa::num_defined() const {
  std::size_t count = 0;
  for (State t : delta_) count += (t != kNoState);
  return count;
}

State PartialDfa::run_from(State q, const Word& w) const {
  const std::size_t k = alphabet_.size();
  for (Symbol a : w) {
    if (a >= k) throw input_error("symbol index " + std::to_string(a) + " not in alphabet");
    if (q == kNoState) return kNoState;
    q = delta_[q * k + a];
  }
  return q;
}

Dfa PartialDfa::to_total() const {
  if (!is_total()) throw contract_violation("partial DFA has undefined transitions");
  return Dfa(alphabet_, num_states(), initial_, accepting_, delta_);
}

}  // namespace advlearn
