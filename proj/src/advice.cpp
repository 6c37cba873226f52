#include "advlearn/advice.hpp"

#include <algorithm>
#include <deque>

#include "advlearn/automata.hpp"
#include "advlearn/error.hpp"

namespace advlearn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (a != b) throw input_error("advice and automaton alphabets differ");
}

Witness make_witness(const Word& u, const Word& l, const Word& r, const Word& v, std::size_t rule) {
  return Witness{concat(u, l, v), concat(u, r, v), rule, u.size()};
}

}  // namespace

std::string mode_name(const AdviceMode& mode) {
  return std::visit(overloaded{[](const NoAdvice&) { return "none"; },
                               [](const TwoSidedAdvice&) { return "two-sided"; },
                               [](const ControlledAdvice&) { return "csrs"; },
                               [](const PositiveAdvice&) { return "positive"; },
                               [](const NegativeAdvice&) { return "negative"; },
                               [](const UpwardClosedAdvice&) { return "upward"; }},
                    mode);
}

ConsistencyVerdict check_consistency(const Srs& r, const Dfa& d) {
  require_same_alphabet(r.alphabet(), d.alphabet());
  if (r.size() == 0) return {};
  auto access = access_words(d);
  MooreRefinement moore(d);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& rule = r.rules()[i];
    for (State q = 0; q < d.num_states(); ++q) {
      if (!access[q]) continue;
      State p1 = d.run_from(q, rule.lhs), p2 = d.run_from(q, rule.rhs);
      if (moore.equivalent(p1, p2)) continue;
      return {make_witness(*access[q], rule.lhs, rule.rhs, *moore.distinguish(p1, p2), i)};
    }
  }
  return {};
}

ConsistencyVerdict check_consistency_csrs(const Csrs& c, const Dfa& d) {
  require_same_alphabet(c.alphabet(), d.alphabet());
  if (c.size() == 0) return {};
  const std::size_t n = d.num_states();
  auto plain_access = access_words(d);
  MooreRefinement moore(d);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& rule = c.rules()[i];
    std::vector<std::optional<Word>> access;
    switch (c.prefix(i).shape()) {
      case Context::Shape::universal:
        access = plain_access;
        break;
      case Context::Shape::epsilon:
        access.assign(n, std::nullopt);
        access[d.initial()] = Word{};
        break;
      default:
        access = access_words_via(d, c.prefix(i).nfa());
    }
    const Context& suffix = c.suffix(i);
    std::vector<char> separable;
    if (suffix.shape() == Context::Shape::general) separable = pairs_distinguished_within(d, suffix.nfa());
    for (State q = 0; q < n; ++q) {
      if (!access[q]) continue;
      State p1 = d.run_from(q, rule.lhs), p2 = d.run_from(q, rule.rhs);
      std::optional<Word> y;
      switch (suffix.shape()) {
        case Context::Shape::universal:
          y = moore.distinguish(p1, p2);
          break;
        case Context::Shape::epsilon:
          if (d.is_accepting(p1) != d.is_accepting(p2)) y = Word{};
          break;
        default:
          if (separable[p1 * n + p2]) y = distinguished_within(d, p1, p2, suffix.nfa());
      }
      if (y) return {make_witness(*access[q], rule.lhs, rule.rhs, *y, i)};
    }
  }
  return {};
}

ConsistencyVerdict check_consistency_one_sided(const Srs& r, const Dfa& d, Polarity polarity) {
  require_same_alphabet(r.alphabet(), d.alphabet());
  if (r.size() == 0) return {};
  auto access = access_words(d);
  auto relation = subsumption_relation(d);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& rule = r.rules()[i];
    for (State q = 0; q < d.num_states(); ++q) {
      if (!access[q]) continue;
      State pl = d.run_from(q, rule.lhs), pr = d.run_from(q, rule.rhs);
      State lo = polarity == Polarity::positive ? pl : pr;
      State hi = polarity == Polarity::positive ? pr : pl;
      if (relation.holds(lo, hi)) continue;
      return {make_witness(*access[q], rule.lhs, rule.rhs, *subsumption_witness(d, lo, hi), i)};
    }
  }
  return {};
}

namespace {

std::vector<std::optional<Word>> mealy_access_words(const MealyMachine& m) {
  std::vector<std::optional<Word>> out(m.num_states());
  out[m.initial()] = Word{};
  std::deque<State> queue{m.initial()};
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Symbol a = 0; a < m.inputs().size(); ++a) {
      State t = m.next(q, a);
      if (out[t]) continue;
      Word w = *out[q];
      w.push_back(a);
      out[t] = std::move(w);
      queue.push_back(t);
    }
  }
  return out;
}

void require_mealy_rules(const Srs& r) {
  for (const auto& rule : r.rules())
    if (rule.lhs.empty() || rule.rhs.empty())
      throw advice_error("Mealy advice requires rules with non-empty sides");
}

}  // namespace

ConsistencyVerdict check_consistency_mealy(const Srs& r, const MealyMachine& m) {
  require_same_alphabet(r.alphabet(), m.inputs());
  require_mealy_rules(r);
  auto access = mealy_access_words(m);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& rule = r.rules()[i];
    for (State q = 0; q < m.num_states(); ++q) {
      if (!access[q]) continue;
      if (last_output_from(m, q, rule.lhs) != last_output_from(m, q, rule.rhs))
        return {make_witness(*access[q], rule.lhs, rule.rhs, Word{}, i)};
      auto v = distinguishing_word(m, m.run_from(q, rule.lhs), m.run_from(q, rule.rhs));
      if (v) return {make_witness(*access[q], rule.lhs, rule.rhs, *v, i)};
    }
  }
  return {};
}

Srs upward_closed_system(const Alphabet& alphabet) {
  std::vector<RewriteRule> rules;
  for (Symbol a = 0; a < alphabet.size(); ++a) rules.push_back(RewriteRule{Word{}, Word{a}});
  return Srs(alphabet, std::move(rules), true);
}

ConsistencyVerdict check_advice(const AdviceMode& mode, const Dfa& d) {
  Dfa m = minimize(d);
  return std::visit(
      overloaded{[](const NoAdvice&) { return ConsistencyVerdict{}; },
                 [&](const TwoSidedAdvice& a) { return check_consistency(a.srs, m); },
                 [&](const ControlledAdvice& a) { return check_consistency_csrs(a.csrs, m); },
                 [&](const PositiveAdvice& a) { return check_consistency_one_sided(a.srs, m, Polarity::positive); },
                 [&](const NegativeAdvice& a) { return check_consistency_one_sided(a.srs, m, Polarity::negative); },
                 [&](const UpwardClosedAdvice&) {
                   return check_consistency_one_sided(upward_closed_system(m.alphabet()), m, Polarity::positive);
                 }},
      mode);
}

bool is_subsequence(const Word& small, const Word& big) {
  if (small.size() > big.size()) return false;
  std::size_t i = 0;
  for (std::size_t j = 0; j < big.size() && i < small.size(); ++j)
    if (big[j] == small[i]) ++i;
  return i == small.size();
}

void SignedCache::record(const Word& w, bool member) {
  auto& same = member ? positives_ : negatives_;
  auto& other = member ? negatives_ : positives_;
  if (std::find(other.begin(), other.end(), w) != other.end())
    throw contract_violation("word recorded with both signs");
  if (std::find(same.begin(), same.end(), w) == same.end()) same.push_back(w);
}

std::optional<bool> upward_closed_infer(const SignedCache& s, const Word& w) {
  for (const auto& p : s.positives())
    if (is_subsequence(p, w)) return true;
  for (const auto& n : s.negatives())
    if (is_subsequence(w, n)) return false;
  return std::nullopt;
}

namespace {

bool convergence_ok(const AdviceMode& mode) {
  if (auto* a = std::get_if<TwoSidedAdvice>(&mode)) return check_convergence(a->srs).proved();
  if (auto* a = std::get_if<ControlledAdvice>(&mode)) return check_convergence(a->csrs).proved();
  return true;
}

bool caches_normal_forms(const AdviceMode& mode) {
  return std::holds_alternative<TwoSidedAdvice>(mode) || std::holds_alternative<ControlledAdvice>(mode);
}

}  // namespace

AdviceLayer::AdviceLayer(AdviceMode mode, DfaTeacher& teacher, AdviceOptions options)
    : mode_(std::move(mode)), teacher_(&teacher), options_(options) {
  std::visit(overloaded{[](const NoAdvice&) {}, [&](const TwoSidedAdvice& a) { require_same_alphabet(a.srs.alphabet(), teacher.target().alphabet()); },
                        [&](const ControlledAdvice& a) { require_same_alphabet(a.csrs.alphabet(), teacher.target().alphabet()); },
                        [&](const PositiveAdvice& a) { require_same_alphabet(a.srs.alphabet(), teacher.target().alphabet()); },
                        [&](const NegativeAdvice& a) { require_same_alphabet(a.srs.alphabet(), teacher.target().alphabet()); },
                        [&](const UpwardClosedAdvice&) { up_ = upward_closed_system(teacher.target().alphabet()); }},
             mode_);
  infer_ = options_.infer_membership && caches_normal_forms(mode_);
  if (infer_ && !options_.assume_convergent && !convergence_ok(mode_))
    throw advice_error("advice is not proved convergent; membership inference refused");
}

Word AdviceLayer::cache_key(const Word& w) const {
  if (!infer_) return w;
  try {
    if (auto* a = std::get_if<TwoSidedAdvice>(&mode_)) return normal_form(a->srs, w, options_.step_budget);
    return csrs_normal_form(std::get<ControlledAdvice>(mode_).csrs, w, options_.step_budget);
  } catch (const non_termination_error& e) {
    throw advice_error(std::string("normal form unavailable: ") + e.what());
  }
}

bool AdviceLayer::lookup(const Word& w) {
  if (std::holds_alternative<UpwardClosedAdvice>(mode_)) {
    if (auto inferred = upward_closed_infer(signed_, w)) {
      ++stats_.mq_inferred;
      if (options_.shadow && !teacher_->verify(w, *inferred)) ++shadow_mismatches_;
      return *inferred;
    }
    bool answer = teacher_->membership(w);
    ++stats_.mq_asked;
    signed_.record(w, answer);
    return answer;
  }
  Word key = cache_key(w);
  if (auto cached = cache_.find(key)) {
    ++stats_.mq_inferred;
    if (options_.shadow && !teacher_->verify(w, *cached)) ++shadow_mismatches_;
    return *cached;
  }
  bool answer = teacher_->membership(w);
  ++stats_.mq_asked;
  cache_.store(key, answer);
  return answer;
}

bool AdviceLayer::membership(const Word& w) { return lookup(w); }

ConsistencyVerdict AdviceLayer::check(const Dfa& h) const {
  return std::visit(
      overloaded{[](const NoAdvice&) { return ConsistencyVerdict{}; },
                 [&](const TwoSidedAdvice& a) { return check_consistency(a.srs, h); },
                 [&](const ControlledAdvice& a) { return check_consistency_csrs(a.csrs, h); },
                 [&](const PositiveAdvice& a) { return check_consistency_one_sided(a.srs, h, Polarity::positive); },
                 [&](const NegativeAdvice& a) { return check_consistency_one_sided(a.srs, h, Polarity::negative); },
                 [&](const UpwardClosedAdvice&) { return check_consistency_one_sided(*up_, h, Polarity::positive); }},
      mode_);
}

std::optional<Word> AdviceLayer::equivalence(const Dfa& hypothesis) {
  auto verdict = check(hypothesis);
  if (verdict.consistent()) {
    last_witness_.reset();
    ++stats_.eq_asked;
    return teacher_->equivalence(hypothesis);
  }
  last_witness_ = verdict.witness;
  const Witness& w = *verdict.witness;
  ++stats_.mq_witness;
  bool x_member = lookup(w.x);
  ++stats_.eq_inferred;
  Word cex = x_member != hypothesis.accepts(w.x) ? w.x : w.y;
  if (options_.shadow && !teacher_->verify(cex, !hypothesis.accepts(cex))) ++shadow_mismatches_;
  return cex;
}

MealyAdviceLayer::MealyAdviceLayer(AdviceMode mode, MealyTeacher& teacher, AdviceOptions options)
    : mode_(std::move(mode)), teacher_(&teacher), options_(options) {
  if (auto* a = std::get_if<TwoSidedAdvice>(&mode_)) {
    require_same_alphabet(a->srs.alphabet(), teacher.target().inputs());
    require_mealy_rules(a->srs);
    infer_ = options_.infer_membership;
    if (infer_ && !options_.assume_convergent && !check_convergence(a->srs).proved())
      throw advice_error("advice is not proved convergent; membership inference refused");
  } else if (!std::holds_alternative<NoAdvice>(mode_)) {
    throw advice_error("Mealy learning supports only two-sided advice");
  }
}

Word MealyAdviceLayer::cache_key(const Word& w) const {
  if (!infer_) return w;
  try {
    return normal_form(std::get<TwoSidedAdvice>(mode_).srs, w, options_.step_budget);
  } catch (const non_termination_error& e) {
    throw advice_error(std::string("normal form unavailable: ") + e.what());
  }
}

Symbol MealyAdviceLayer::lookup(const Word& w) {
  Word key = cache_key(w);
  if (auto cached = cache_.find(key)) {
    ++stats_.mq_inferred;
    if (options_.shadow && !teacher_->verify(w, *cached)) ++shadow_mismatches_;
    return *cached;
  }
  Symbol answer = teacher_->last_output(w);
  ++stats_.mq_asked;
  cache_.store(key, answer);
  return answer;
}

Symbol MealyAdviceLayer::output(const Word& w) { return lookup(w); }

std::optional<Word> MealyAdviceLayer::equivalence(const MealyMachine& hypothesis) {
  ConsistencyVerdict verdict;
  if (auto* a = std::get_if<TwoSidedAdvice>(&mode_)) verdict = check_consistency_mealy(a->srs, hypothesis);
  if (verdict.consistent()) {
    last_witness_.reset();
    ++stats_.eq_asked;
    return teacher_->equivalence(hypothesis);
  }
  last_witness_ = verdict.witness;
  const Witness& w = *verdict.witness;
  ++stats_.mq_witness;
  Symbol x_out = lookup(w.x);
  ++stats_.eq_inferred;
  Word cex = x_out != last_output(hypothesis, w.x) ? w.x : w.y;
  if (options_.shadow && !teacher_->verify_counterexample(hypothesis, cex)) ++shadow_mismatches_;
  return cex;
}

RunOutcome learn_with_advice(const Dfa& target, const AdviceMode& mode, const LearnerConfig& config,
                             const AdviceOptions& options) {
  DfaTeacher teacher(target, options.shadow);
  AdviceLayer layer(mode, teacher, options);
  auto result = lstar_learn(target.alphabet(), layer.membership_channel(), layer.equivalence_channel(), config);
  QueryStats stats = layer.stats();
  stats.cex_total_length = result.counts.cex_total_length;
  return RunOutcome{std::move(result.dfa), stats, result.counts, layer.shadow_mismatches(),
                    teacher.counters().mq, teacher.counters().eq};
}

MealyRunOutcome learn_mealy_with_advice(const MealyMachine& target, const AdviceMode& mode,
                                        const LearnerConfig& config, const AdviceOptions& options) {
  MealyTeacher teacher(target, options.shadow);
  MealyAdviceLayer layer(mode, teacher, options);
  auto result = lstar_mealy(target.inputs(), target.outputs(), layer.output_channel(), layer.equivalence_channel(),
                            config);
  QueryStats stats = layer.stats();
  stats.cex_total_length = result.counts.cex_total_length;
  return MealyRunOutcome{std::move(result.machine), stats, result.counts, layer.shadow_mismatches()};
}

}  // namespace advlearn
