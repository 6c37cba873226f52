#include "advlearn/rewriting.hpp"

#include <algorithm>
#include <string>

#include "advlearn/error.hpp"
#include "overlaps.hpp"

namespace advlearn {

Srs::Srs(Alphabet alphabet, std::vector<RewriteRule> rules, bool one_sided)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)), one_sided_(one_sided) {
  by_first_.resize(alphabet_.size());
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& rule = rules_[i];
    alphabet_.check(rule.lhs);
    alphabet_.check(rule.rhs);
    if (rule.lhs == rule.rhs) throw input_error("rule " + std::to_string(i + 1) + " has identical sides");
    if (rule.lhs.empty()) {
      if (!one_sided_) throw input_error("empty left-hand side requires a one-sided system");
      has_empty_lhs_ = true;
      empty_lhs_.push_back(i);
    }
    max_lhs_ = std::max(max_lhs_, rule.lhs.size());
    total_size_ += rule.lhs.size() + rule.rhs.size();
  }
  for (Symbol a = 0; a < alphabet_.size(); ++a)
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (rules_[i].lhs.empty() || rules_[i].lhs[0] == a) by_first_[a].push_back(i);
}

bool occurs_at(const Word& w, std::size_t position, const Word& pattern) {
  if (position > w.size() || w.size() - position < pattern.size()) return false;
  return std::equal(pattern.begin(), pattern.end(), w.begin() + static_cast<std::ptrdiff_t>(position));
}

Word replace_at(const Word& w, std::size_t position, std::size_t lhs_length, const Word& rhs) {
  Word out;
  out.reserve(w.size() - lhs_length + rhs.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(position));
  out.insert(out.end(), rhs.begin(), rhs.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(position + lhs_length), w.end());
  return out;
}

std::set<Word> single_step(const Srs& r, const Word& w) {
  r.alphabet().check(w);
  std::set<Word> out;
  for (std::size_t p = 0; p <= w.size(); ++p)
    for (const auto& rule : r.rules())
      if (occurs_at(w, p, rule.lhs)) out.insert(replace_at(w, p, rule.lhs.size(), rule.rhs));
  return out;
}

std::size_t default_step_budget(std::size_t total_rule_size, const Word& w) {
  return 10 * (w.size() + 1) * (total_rule_size + 1);
}

namespace {

// First rule (list order) matching at position p, or size() if none.
std::size_t match_at(const Srs& r, const Word& w, std::size_t p) {
  const auto& list = p < w.size() ? r.candidates(w[p]) : r.empty_lhs_rules();
  for (std::size_t i : list)
    if (occurs_at(w, p, r.rules()[i].lhs)) return i;
  return r.size();
}

}  // namespace

Word normal_form(const Srs& r, const Word& w, std::optional<std::size_t> step_budget,
                 std::vector<RewriteStep>* trace) {
  r.alphabet().check(w);
  const std::size_t budget = step_budget.value_or(default_step_budget(r.total_size(), w));
  const std::size_t back = std::max<std::size_t>(r.max_lhs(), 1) - 1;
  Word cur = w;
  std::size_t steps = 0;
  std::size_t p = 0;
  while (p <= cur.size()) {
    std::size_t i = match_at(r, cur, p);
    if (i == r.size()) {
      ++p;
      continue;
    }
    if (steps == budget) throw non_termination_error("rewriting exceeded its step budget of " + std::to_string(budget));
    ++steps;
    const auto& rule = r.rules()[i];
    if (rule.lhs.size() == rule.rhs.size()) {
      std::copy(rule.rhs.begin(), rule.rhs.end(), cur.begin() + static_cast<std::ptrdiff_t>(p));
    } else {
      cur = replace_at(cur, p, rule.lhs.size(), rule.rhs);
    }
    if (trace) trace->push_back(RewriteStep{i, p});
    p = p > back ? p - back : 0;
  }
  return cur;
}

Word apply_step(const Srs& r, const Word& w, RewriteStep step) {
  if (step.rule >= r.size()) throw input_error("rule index out of range");
  const auto& rule = r.rules()[step.rule];
  if (!occurs_at(w, step.position, rule.lhs)) throw input_error("rule does not match at the given position");
  return replace_at(w, step.position, rule.lhs.size(), rule.rhs);
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::proved:
      return "proved";
    case Verdict::refuted:
      return "refuted";
    default:
      return "unknown";
  }
}

ConvergenceVerdict check_convergence(const Srs& r) {
  ConvergenceVerdict verdict;
  bool decreasing = !r.has_empty_lhs();
  for (const auto& rule : r.rules())
    if (!shortlex_less(rule.rhs, rule.lhs)) decreasing = false;
  verdict.termination = decreasing ? Verdict::proved : Verdict::unknown;
  if (r.has_empty_lhs()) return verdict;

  std::vector<Word> lhs;
  for (const auto& rule : r.rules()) lhs.push_back(rule.lhs);
  bool all_joined = true;
  for (const auto& o : enumerate_overlaps(lhs)) {
    const auto& ri = r.rules()[o.first];
    const auto& rj = r.rules()[o.second];
    CriticalPair cp;
    cp.overlap = o.word;
    cp.left = replace_at(o.word, 0, ri.lhs.size(), ri.rhs);
    cp.right = replace_at(o.word, o.position, rj.lhs.size(), rj.rhs);
    try {
      cp.left_normal_form = normal_form(r, cp.left);
      cp.right_normal_form = normal_form(r, cp.right);
    } catch (const non_termination_error&) {
      all_joined = false;
      continue;
    }
    if (cp.left_normal_form == cp.right_normal_form) continue;
    all_joined = false;
    // Two distinct irreducible descendants of one word: not confluent, and
    // under termination not locally confluent either.
    if (verdict.termination == Verdict::proved) {
      verdict.local_confluence = Verdict::refuted;
      verdict.counterexample = std::move(cp);
      return verdict;
    }
  }
  if (all_joined) verdict.local_confluence = Verdict::proved;
  if (verdict.termination == Verdict::proved && verdict.local_confluence == Verdict::proved)
    verdict.convergent = Verdict::proved;
  return verdict;
}

}  // namespace advlearn
