#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "advlearn/alphabet.hpp"

namespace advlearn {

struct RewriteRule {
  Word lhs;
  Word rhs;

  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

/// One rewrite: rule index applied at a position of the current word.
struct RewriteStep {
  std::size_t rule;
  std::size_t position;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

/// Ordered list of rules over an alphabet. Empty left-hand sides are only
/// accepted in one-sided mode.
class Srs {
 public:
  Srs(Alphabet alphabet, std::vector<RewriteRule> rules, bool one_sided = false);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool one_sided() const noexcept { return one_sided_; }
  bool has_empty_lhs() const noexcept { return has_empty_lhs_; }
  std::size_t max_lhs() const noexcept { return max_lhs_; }
  /// Sum of |lhs| + |rhs| over all rules.
  std::size_t total_size() const noexcept { return total_size_; }

  /// Rule indices that may match at a position holding `a`, in list order
  /// (rules with an empty lhs included).
  const std::vector<std::size_t>& candidates(Symbol a) const { return by_first_[a]; }
  const std::vector<std::size_t>& empty_lhs_rules() const noexcept { return empty_lhs_; }

  friend bool operator==(const Srs& a, const Srs& b) {
    return a.alphabet_ == b.alphabet_ && a.rules_ == b.rules_ && a.one_sided_ == b.one_sided_;
  }

 private:
  Alphabet alphabet_;
  std::vector<RewriteRule> rules_;
  bool one_sided_;
  bool has_empty_lhs_ = false;
  std::size_t max_lhs_ = 0;
  std::size_t total_size_ = 0;
  std::vector<std::vector<std::size_t>> by_first_;
  std::vector<std::size_t> empty_lhs_;
};

/// True iff `pattern` occurs in `w` at `position`.
bool occurs_at(const Word& w, std::size_t position, const Word& pattern);

/// Replaces w[position, position+|lhs|) by rhs. The caller checks the match.
Word replace_at(const Word& w, std::size_t position, std::size_t lhs_length, const Word& rhs);

/// All words reachable in exactly one step.
std::set<Word> single_step(const Srs& r, const Word& w);

/// 10·(|w|+1)·(total rule size+1).
std::size_t default_step_budget(std::size_t total_rule_size, const Word& w);

/// Rewrites with the leftmost match, first rule at that position, until no
/// rule applies. Throws non_termination_error when the budget runs out.
/// Applied steps are appended to `trace` when given.
Word normal_form(const Srs& r, const Word& w, std::optional<std::size_t> step_budget = std::nullopt,
                 std::vector<RewriteStep>* trace = nullptr);

/// Applies one recorded step, validating the match. Throws input_error.
Word apply_step(const Srs& r, const Word& w, RewriteStep step);

enum class Verdict { proved, refuted, unknown };

const char* to_string(Verdict v) noexcept;

/// An overlap word together with its two one-step results and their normal
/// forms under the fixed strategy.
struct CriticalPair {
  Word overlap;
  Word left;
  Word right;
  Word left_normal_form;
  Word right_normal_form;
};

struct ConvergenceVerdict {
  Verdict termination = Verdict::unknown;
  Verdict local_confluence = Verdict::unknown;
  Verdict convergent = Verdict::unknown;
  /// Set when local confluence is refuted.
  std::optional<CriticalPair> counterexample;

  bool proved() const noexcept { return convergent == Verdict::proved; }
};

/// Termination: every rule decreases in shortlex order. Local confluence:
/// every critical pair (overlaps and containments, a rule with itself
/// included) reaches one normal form.
ConvergenceVerdict check_convergence(const Srs& r);

}  // namespace advlearn
