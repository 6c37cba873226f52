#pragma once

// Seeded targets and the advice systems that go with them.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "advlearn/controlled.hpp"
#include "advlearn/dfa.hpp"
#include "advlearn/rewriting.hpp"

namespace advlearn {

/// n states, initial state 0. For each state in id order: one acceptance
/// coin with probability accept_prob, then one uniform target per symbol in
/// alphabet order.
Dfa random_dfa(std::size_t n, const Alphabet& alphabet, double accept_prob, std::uint64_t seed);

/// Makes every state in the image of the a-transition an a-fixpoint, so
/// that δ(q,aa) = δ(q,a) everywhere.
Dfa make_letter_idempotent(const Dfa& d, Symbol a);

enum class PatternMode { any, all };

/// Words containing some (any) or every (all) pattern as a factor;
/// minimized.
Dfa pattern_dfa(const std::vector<Word>& patterns, PatternMode mode, const Alphabet& alphabet);

/// Σ1 followed by the tokens of Σ2 not in Σ1.
Alphabet union_alphabet(const Alphabet& a, const Alphabet& b);

/// Interleaving product over the union alphabet: shared symbols move both
/// components, private ones move their owner. Accepts iff both accept.
/// Minimized.
Dfa convolution(const Dfa& d1, const Dfa& d2);

/// Tokens "(a,b,c)" for a,b,c ∈ {0,1}, in binary order.
Alphabet bitadd_alphabet();

/// Least-significant-bit-first addition x + y = z; minimized (3 states).
Dfa bitadd_dfa();

/// {u u → u} for each u.
Srs idempotent_srs(const Alphabet& alphabet, const std::vector<Word>& words);

/// {b a → a b} for each independent pair, oriented so that a < b.
Srs commutation_srs(const Alphabet& alphabet, const std::vector<std::pair<Symbol, Symbol>>& independent);

/// Commutation of the private letters of two component alphabets, over
/// their union: b a → a b for a ∈ Σ1\Σ2, b ∈ Σ2\Σ1.
Srs convolution_srs(const Alphabet& sigma1, const Alphabet& sigma2);

/// {(1,0,0) → (0,1,0), (1,0,1) → (0,1,1)} over bitadd_alphabet().
Srs bitadd_srs();

/// {a w → w | a ∈ Σ} for a synchronizing word w.
Srs synchronizing_srs(const Alphabet& alphabet, const Word& w);

/// Rules (u·a, u', ε, Σ*) for every defined transition δ(q,a) = q' with
/// u·a ∉ S, where S holds the shortest access words. States are visited in
/// BFS order and symbols in alphabet order. Throws input_error if some
/// state is unreachable.
Csrs encode_partial_dfa(const PartialDfa& b);

/// Keeps `keep` transitions grown outward from the initial state: each step
/// picks uniformly among not-yet-kept transitions leaving an already reached
/// state. Unreached states are dropped; the rest keep their relative order.
PartialDfa prune_transitions(const Dfa& d, std::size_t keep, std::uint64_t seed);

}  // namespace advlearn
