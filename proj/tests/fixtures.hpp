#pragma once

#include <string>
#include <vector>

#include "advlearn/dfa.hpp"
#include "advlearn/controlled.hpp"
#include "advlearn/mealy.hpp"
#include "advlearn/rewriting.hpp"
#include "advlearn/rng.hpp"

namespace fixtures {

using namespace advlearn;

inline Alphabet ab() { return Alphabet({"a", "b"}); }

/// Even number of a's; q0 accepting.
inline Dfa parity() { return Dfa(ab(), 2, 0, {true, false}, {1, 0, 0, 1}); }

inline Dfa accept_all(const Alphabet& sigma = ab()) {
  return Dfa(sigma, 1, 0, {true}, std::vector<State>(sigma.size(), 0));
}

/// Only the empty word.
inline Dfa epsilon_only() { return Dfa(ab(), 2, 0, {true, false}, {1, 1, 1, 1}); }

/// Number of a's mod 3; residue 0 accepting. States r0, r1, r2.
inline Dfa mod3() { return Dfa(Alphabet({"a"}), 3, 0, {true, false, false}, {1, 2, 0}); }

/// Parity with the accepting state duplicated: 0 -a-> 1 -a-> 2 -a-> 1.
inline Dfa parity_duplicated() { return Dfa(ab(), 3, 0, {true, false, true}, {1, 0, 2, 1, 1, 2}); }

/// Words containing at least one a.
inline Dfa contains_a() { return Dfa(ab(), 2, 0, {false, true}, {1, 0, 1, 1}); }

/// Exactly the word "a".
inline Dfa single_a() { return Dfa(ab(), 3, 0, {false, true, false}, {1, 2, 2, 2, 2, 2}); }

/// (aaa)* + b(aa + aab) over {a,b}. State 1 is reached by "a", state 3 by "b".
inline Dfa cubes_or_b() {
  // 0 initial, 1 a, 2 aa, 8 aaa; 3 b, 4 ba, 5 baa, 6 baab; 7 sink
  std::vector<State> delta = {
      1, 3,  // 0
      2, 7,  // 1
      8, 7,  // 2
      4, 7,  // 3
      5, 7,  // 4
      7, 6,  // 5
      7, 7,  // 6
      7, 7,  // 7
      1, 7,  // 8
  };
  return Dfa(ab(), 9, 0, {true, false, false, false, false, true, true, false, true}, delta);
}

/// Emits its current state id (0 or 1) and toggles on every input.
inline MealyMachine toggle() {
  return MealyMachine(ab(), Alphabet({"0", "1"}), 2, 0, {1, 1, 0, 0}, {0, 0, 1, 1});
}

inline MealyMachine identity() { return MealyMachine(ab(), ab(), 1, 0, {0, 0}, {0, 1}); }

inline MealyMachine constant() { return MealyMachine(ab(), Alphabet({"x"}), 1, 0, {0, 0}, {0, 0}); }

inline Alphabet letters(std::size_t k) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < k; ++i) tokens.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet(tokens);
}

inline Word random_word(SplitMix64& rng, std::size_t min_len, std::size_t max_len, std::size_t k) {
  Word w(min_len + rng.uniform_below(max_len - min_len + 1));
  for (auto& s : w) s = static_cast<Symbol>(rng.uniform_below(k));
  return w;
}

/// Up to `max_rules` rules with sides of length <= max_side; lhs non-empty
/// unless `empty_lhs`.
inline std::vector<RewriteRule> random_rules(SplitMix64& rng, std::size_t k, std::size_t max_rules,
                                             std::size_t max_side, bool empty_lhs = false) {
  std::vector<RewriteRule> rules;
  std::size_t count = 1 + rng.uniform_below(max_rules);
  while (rules.size() < count) {
    Word l = random_word(rng, empty_lhs ? 0 : 1, max_side, k);
    Word r = random_word(rng, 0, max_side, k);
    if (l != r) rules.push_back({l, r});
  }
  return rules;
}

/// A context drawn from a fixed pool: ε, Σ*, ∅, a*, Σ*·b, b·Σ* (b is the
/// last letter).
inline Regex random_context(SplitMix64& rng, const Alphabet& sigma) {
  Symbol a = 0, b = static_cast<Symbol>(sigma.size() - 1);
  switch (rng.uniform_below(6)) {
    case 0:
      return Regex::epsilon();
    case 1:
      return Regex::universal(sigma);
    case 2:
      return Regex::empty_set();
    case 3:
      return Regex::star(Regex::symbol(a));
    case 4:
      return Regex::concat(Regex::universal(sigma), Regex::symbol(b));
    default:
      return Regex::concat(Regex::symbol(b), Regex::universal(sigma));
  }
}

}  // namespace fixtures
