#pragma once

// Controlled rewriting: a rule applies to x·l·y only when x ∈ L(prefix_ctx)
// and y ∈ L(suffix_ctx).

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "advlearn/nfa.hpp"
#include "advlearn/regex.hpp"
#include "advlearn/rewriting.hpp"

namespace advlearn {

struct ControlledRule {
  Word lhs;
  Word rhs;
  Regex prefix_ctx;
  Regex suffix_ctx;

  friend bool operator==(const ControlledRule&, const ControlledRule&) = default;
};

/// A context compiled for matching.
class Context {
 public:
  enum class Shape { epsilon, universal, general };

  Context(const Regex& e, std::size_t alphabet_size);

  Shape shape() const noexcept { return shape_; }
  /// ε-free automaton for the context (also built for the special shapes).
  const Nfa& nfa() const noexcept { return *nfa_; }
  bool accepts(const Word& w, std::size_t begin, std::size_t end) const;

 private:
  Shape shape_;
  std::shared_ptr<const Nfa> nfa_;
};

class Csrs {
 public:
  Csrs(Alphabet alphabet, std::vector<ControlledRule> rules);

  /// Embeds each rule as (l, r, Σ*, Σ*).
  static Csrs from_srs(const Srs& r);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<ControlledRule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  std::size_t total_size() const noexcept { return total_size_; }
  const Context& prefix(std::size_t i) const { return prefix_[i]; }
  const Context& suffix(std::size_t i) const { return suffix_[i]; }

  /// True when every context is structurally Σ*.
  bool is_plain() const noexcept { return plain_; }
  /// The underlying plain rules (contexts dropped).
  Srs uncontrolled() const;

  friend bool operator==(const Csrs& a, const Csrs& b) {
    return a.alphabet_ == b.alphabet_ && a.rules_ == b.rules_;
  }

 private:
  Alphabet alphabet_;
  std::vector<ControlledRule> rules_;
  std::vector<Context> prefix_;
  std::vector<Context> suffix_;
  std::size_t total_size_ = 0;
  bool plain_ = true;
};

/// True iff rule i applies to w at `position` (lhs match and both contexts).
bool csrs_applies(const Csrs& c, std::size_t rule, const Word& w, std::size_t position);

std::set<Word> csrs_single_step(const Csrs& c, const Word& w);

/// Leftmost position, first rule; rescans from the start after each step.
Word csrs_normal_form(const Csrs& c, const Word& w, std::optional<std::size_t> step_budget = std::nullopt,
                      std::vector<RewriteStep>* trace = nullptr);

Word csrs_apply_step(const Csrs& c, const Word& w, RewriteStep step);

/// As for plain systems. Controlled overlaps are checked for feasibility of
/// their contexts: with no feasible overlap local confluence is proved; a
/// feasible overlap whose shortest instance does not join refutes it.
ConvergenceVerdict check_convergence(const Csrs& c);

}  // namespace advlearn
