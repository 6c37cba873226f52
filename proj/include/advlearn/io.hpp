#pragma once

// Text formats for automata, rewriting systems and regular expressions.
//
// Automaton file:
//   alphabet: a b
//   outputs: x y            (Mealy only)
//   states: q0 q1
//   initial: q0
//   accepting: q1           (DFA only)
//   trans: q0 a q1
//   out: q0 a x             (Mealy only)
// SRS file: optional `alphabet:` line, then `LHS -> RHS` per line, `_` for ε.
// cSRS file: `LHS -> RHS | ex = REGEX | ey = REGEX`.
// Regex: tokens, ( ), + (union), * (star), juxtaposition, ~ (ε), ! (∅), . (Σ).
// `#` starts a comment everywhere.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "advlearn/controlled.hpp"
#include "advlearn/dfa.hpp"
#include "advlearn/mealy.hpp"
#include "advlearn/regex.hpp"
#include "advlearn/rewriting.hpp"

namespace advlearn {

using Automaton = std::variant<Dfa, MealyMachine>;

/// A file with `out:` or `outputs:` lines is a Mealy machine. Missing DFA
/// transitions are an error unless `complete_with_sink`, which adds one
/// rejecting sink state.
Automaton parse_automaton(std::string_view text, bool complete_with_sink = false);
Dfa parse_dfa(std::string_view text, bool complete_with_sink = false);
MealyMachine parse_mealy(std::string_view text);

/// States are written as q0..q{n-1}.
std::string serialize(const Dfa& d);
std::string serialize(const MealyMachine& m);

/// Alphabet: the file's header if present, else `alphabet`, else the sorted
/// tokens of the rules.
Srs parse_srs(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt,
              bool one_sided = false);
std::string serialize(const Srs& r);

Csrs parse_csrs(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt);
std::string serialize(const Csrs& c);

/// Tokens are matched greedily (longest alphabet token first), so tokens
/// may touch operators. `line` is only used for diagnostics.
Regex parse_regex(std::string_view text, const Alphabet& alphabet, std::size_t line = 1, std::size_t column = 1);
std::string format_regex(const Regex& e, const Alphabet& alphabet);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace advlearn
