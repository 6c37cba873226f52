#include "advlearn/controlled.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "advlearn/error.hpp"
#include "overlaps.hpp"

namespace advlearn {

Context::Context(const Regex& e, std::size_t alphabet_size)
    : shape_(e.is_epsilon()                     ? Shape::epsilon
             : e.is_universal(alphabet_size)    ? Shape::universal
                                                : Shape::general),
      nfa_(std::make_shared<const Nfa>(regex_to_nfa(e, alphabet_size).without_epsilon())) {}

bool Context::accepts(const Word& w, std::size_t begin, std::size_t end) const {
  switch (shape_) {
    case Shape::epsilon:
      return begin == end;
    case Shape::universal:
      return true;
    default: {
      auto set = nfa_->initial_set();
      for (std::size_t i = begin; i < end; ++i) set = nfa_->step(set, w[i]);
      return nfa_->accepts_any(set);
    }
  }
}

Csrs::Csrs(Alphabet alphabet, std::vector<ControlledRule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  const std::size_t k = alphabet_.size();
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& rule = rules_[i];
    alphabet_.check(rule.lhs);
    alphabet_.check(rule.rhs);
    if (rule.lhs.empty()) throw input_error("rule " + std::to_string(i + 1) + " has an empty left-hand side");
    if (rule.lhs == rule.rhs) throw input_error("rule " + std::to_string(i + 1) + " has identical sides");
    prefix_.emplace_back(rule.prefix_ctx, k);
    suffix_.emplace_back(rule.suffix_ctx, k);
    plain_ = plain_ && prefix_.back().shape() == Context::Shape::universal &&
             suffix_.back().shape() == Context::Shape::universal;
    total_size_ += rule.lhs.size() + rule.rhs.size();
  }
}

Csrs Csrs::from_srs(const Srs& r) {
  if (r.has_empty_lhs()) throw input_error("one-sided rules cannot be embedded as controlled rules");
  std::vector<ControlledRule> rules;
  Regex all = Regex::universal(r.alphabet());
  for (const auto& rule : r.rules()) rules.push_back(ControlledRule{rule.lhs, rule.rhs, all, all});
  return Csrs(r.alphabet(), std::move(rules));
}

Srs Csrs::uncontrolled() const {
  std::vector<RewriteRule> rules;
  for (const auto& rule : rules_) rules.push_back(RewriteRule{rule.lhs, rule.rhs});
  return Srs(alphabet_, std::move(rules));
}

bool csrs_applies(const Csrs& c, std::size_t rule, const Word& w, std::size_t position) {
  const auto& r = c.rules()[rule];
  return occurs_at(w, position, r.lhs) && c.prefix(rule).accepts(w, 0, position) &&
         c.suffix(rule).accepts(w, position + r.lhs.size(), w.size());
}

std::set<Word> csrs_single_step(const Csrs& c, const Word& w) {
  c.alphabet().check(w);
  std::set<Word> out;
  for (std::size_t p = 0; p < w.size(); ++p)
    for (std::size_t i = 0; i < c.size(); ++i)
      if (csrs_applies(c, i, w, p)) out.insert(replace_at(w, p, c.rules()[i].lhs.size(), c.rules()[i].rhs));
  return out;
}

namespace {

// Leftmost applicable (position, rule), tracking general prefix contexts
// incrementally along the word.
std::optional<RewriteStep> first_redex(const Csrs& c, const Word& w) {
  std::vector<std::vector<char>> sets(c.size());
  bool any_beyond_start = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.prefix(i).shape() == Context::Shape::general) sets[i] = c.prefix(i).nfa().initial_set();
    if (c.prefix(i).shape() != Context::Shape::epsilon) any_beyond_start = true;
  }
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (p > 0 && !any_beyond_start) break;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& rule = c.rules()[i];
      if (!occurs_at(w, p, rule.lhs)) continue;
      bool prefix_ok = false;
      switch (c.prefix(i).shape()) {
        case Context::Shape::epsilon:
          prefix_ok = p == 0;
          break;
        case Context::Shape::universal:
          prefix_ok = true;
          break;
        default:
          prefix_ok = c.prefix(i).nfa().accepts_any(sets[i]);
      }
      if (prefix_ok && c.suffix(i).accepts(w, p + rule.lhs.size(), w.size())) return RewriteStep{i, p};
    }
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!sets[i].empty()) sets[i] = c.prefix(i).nfa().step(sets[i], w[p]);
  }
  return std::nullopt;
}

}  // namespace

Word csrs_normal_form(const Csrs& c, const Word& w, std::optional<std::size_t> step_budget,
                      std::vector<RewriteStep>* trace) {
  c.alphabet().check(w);
  const std::size_t budget = step_budget.value_or(default_step_budget(c.total_size(), w));
  Word cur = w;
  std::size_t steps = 0;
  while (auto step = first_redex(c, cur)) {
    if (steps == budget) throw non_termination_error("rewriting exceeded its step budget of " + std::to_string(budget));
    ++steps;
    const auto& rule = c.rules()[step->rule];
    cur = replace_at(cur, step->position, rule.lhs.size(), rule.rhs);
    if (trace) trace->push_back(*step);
  }
  return cur;
}

Word csrs_apply_step(const Csrs& c, const Word& w, RewriteStep step) {
  if (step.rule >= c.size()) throw input_error("rule index out of range");
  if (!csrs_applies(c, step.rule, w, step.position)) throw input_error("rule does not apply at the given position");
  const auto& rule = c.rules()[step.rule];
  return replace_at(w, step.position, rule.lhs.size(), rule.rhs);
}

namespace {

std::vector<char> run_set(const Nfa& nfa, std::vector<char> set, const Word& w, std::size_t begin) {
  for (std::size_t i = begin; i < w.size(); ++i) set = nfa.step(set, w[i]);
  return set;
}

std::vector<char> accepting_set(const Nfa& nfa) {
  std::vector<char> out(nfa.num_states());
  for (State s = 0; s < nfa.num_states(); ++s) out[s] = nfa.is_accepting(s);
  return out;
}

// Shortest word leading A from `start_a` into `good_a` and B from `start_b`
// into `good_b` simultaneously. Both automata are ε-free.
std::optional<Word> common_word(const Nfa& a, const std::vector<char>& start_a, const std::vector<char>& good_a,
                                const Nfa& b, const std::vector<char>& start_b, const std::vector<char>& good_b) {
  const std::size_t nb = b.num_states();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(a.num_states() * nb, none);
  std::vector<Symbol> via(parent.size(), 0);
  std::deque<std::size_t> queue;
  for (State s = 0; s < a.num_states(); ++s)
    for (State t = 0; t < nb; ++t)
      if (start_a[s] && start_b[t]) {
        std::size_t node = s * nb + t;
        parent[node] = node;
        queue.push_back(node);
      }
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    State s = static_cast<State>(node / nb), t = static_cast<State>(node % nb);
    if (good_a[s] && good_b[t]) {
      Word w;
      for (std::size_t cur = node; parent[cur] != cur; cur = parent[cur]) w.push_back(via[cur]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (const auto& ea : a.edges(s))
      for (const auto& eb : b.edges(t)) {
        if (ea.symbol != eb.symbol) continue;
        std::size_t succ = ea.to * nb + eb.to;
        if (parent[succ] == none) {
          parent[succ] = node;
          via[succ] = ea.symbol;
          queue.push_back(succ);
        }
      }
  }
  return std::nullopt;
}

// Shortest contexts x, y making both redexes of x·word·y enabled.
std::optional<std::pair<Word, Word>> feasible_contexts(const Csrs& c, const Overlap& o) {
  const Nfa& pi = c.prefix(o.first).nfa();
  const Nfa& pj = c.prefix(o.second).nfa();
  Word lead(o.word.begin(), o.word.begin() + static_cast<std::ptrdiff_t>(o.position));
  std::vector<char> good_j(pj.num_states(), 0);
  for (State s = 0; s < pj.num_states(); ++s) {
    std::vector<char> single(pj.num_states(), 0);
    single[s] = 1;
    good_j[s] = pj.accepts_any(run_set(pj, single, lead, 0));
  }
  auto x = common_word(pi, pi.initial_set(), accepting_set(pi), pj, pj.initial_set(), good_j);
  if (!x) return std::nullopt;

  const Nfa& si = c.suffix(o.first).nfa();
  const Nfa& sj = c.suffix(o.second).nfa();
  auto start_i = run_set(si, si.initial_set(), o.word, c.rules()[o.first].lhs.size());
  auto start_j = run_set(sj, sj.initial_set(), o.word, o.position + c.rules()[o.second].lhs.size());
  auto y = common_word(si, start_i, accepting_set(si), sj, start_j, accepting_set(sj));
  if (!y) return std::nullopt;
  return std::make_pair(std::move(*x), std::move(*y));
}

// Redexes of rule i left of a disjoint redex of rule j keep each other
// enabled when j's prefix and i's suffix are unconstrained; they never
// coexist when j is anchored at the start or i at the end.
bool disjoint_redexes_commute(const Csrs& c, std::size_t i, std::size_t j) {
  if (c.prefix(j).shape() == Context::Shape::epsilon || c.suffix(i).shape() == Context::Shape::epsilon)
    return true;
  return c.prefix(j).shape() == Context::Shape::universal && c.suffix(i).shape() == Context::Shape::universal;
}

}  // namespace

ConvergenceVerdict check_convergence(const Csrs& c) {
  if (c.is_plain()) return check_convergence(c.uncontrolled());
  ConvergenceVerdict verdict;
  bool decreasing = true;
  for (const auto& rule : c.rules())
    if (!shortlex_less(rule.rhs, rule.lhs)) decreasing = false;
  verdict.termination = decreasing ? Verdict::proved : Verdict::unknown;

  bool settled = true;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (!disjoint_redexes_commute(c, i, j)) settled = false;

  std::vector<Word> lhs;
  for (const auto& rule : c.rules()) lhs.push_back(rule.lhs);
  for (const auto& o : enumerate_overlaps(lhs)) {
    auto contexts = feasible_contexts(c, o);
    if (!contexts) continue;
    settled = false;
    const std::size_t x_len = contexts->first.size();
    CriticalPair cp;
    cp.overlap = concat(contexts->first, o.word, contexts->second);
    cp.left = csrs_apply_step(c, cp.overlap, RewriteStep{o.first, x_len});
    cp.right = csrs_apply_step(c, cp.overlap, RewriteStep{o.second, x_len + o.position});
    try {
      cp.left_normal_form = csrs_normal_form(c, cp.left);
      cp.right_normal_form = csrs_normal_form(c, cp.right);
    } catch (const non_termination_error&) {
      continue;
    }
    if (cp.left_normal_form != cp.right_normal_form && verdict.termination == Verdict::proved) {
      verdict.local_confluence = Verdict::refuted;
      verdict.counterexample = std::move(cp);
      return verdict;
    }
  }
  if (settled) verdict.local_confluence = Verdict::proved;
  if (verdict.termination == Verdict::proved && verdict.local_confluence == Verdict::proved)
    verdict.convergent = Verdict::proved;
  return verdict;
}

}  // namespace advlearn
