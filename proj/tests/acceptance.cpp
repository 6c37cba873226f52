// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "advlearn/advice.hpp"
#include "advlearn/automata.hpp"
#include "advlearn/bench.hpp"
#include "advlearn/generators.hpp"
#include "advlearn/rewriting.hpp"

using namespace advlearn;
using namespace fixtures;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::optional<std::pair<Word, Word>> pair_of(const ConsistencyVerdict& v) {
  if (v.consistent()) return std::nullopt;
  return std::make_pair(v.witness->x, v.witness->y);
}

struct LearningRuns {
  std::size_t runs = 0;
  std::size_t exact = 0;
  std::size_t mismatches = 0;
};

const LearningRuns& idempotent_runs() {
  static LearningRuns result = [] {
    LearningRuns r;
    Alphabet sigma = letters(4);
    Srs idem = idempotent_srs(sigma, {Word{0}});
    AdviceOptions shadow;
    shadow.shadow = true;
    SplitMix64 rng(20261018);
    for (int i = 0; i < 100; ++i) {
      std::size_t n = 50 + rng.uniform_below(51);
      Dfa target = make_letter_idempotent(random_dfa(n, sigma, 0.1, rng.next()), 0);
      std::size_t keep = std::min<std::size_t>(10 + rng.uniform_below(11), 4 * reachable_states(target).size());
      Csrs rb = encode_partial_dfa(prune_transitions(target, keep, rng.next()));
      std::size_t minimal = minimize(target).num_states();
      for (const AdviceMode& mode :
           std::vector<AdviceMode>{NoAdvice{}, TwoSidedAdvice{idem}, PositiveAdvice{idem}, ControlledAdvice{rb}}) {
        RunOutcome out = learn_with_advice(target, mode, LearnerConfig{}, shadow);
        ++r.runs;
        if (!shortest_counterexample(out.dfa, target) && out.dfa.num_states() == minimal) ++r.exact;
        r.mismatches += out.shadow_mismatches;
      }
    }
    return r;
  }();
  return result;
}

Outcome exact_and_minimal() {
  const LearningRuns& r = idempotent_runs();
  return {r.exact == r.runs, std::to_string(r.exact) + "/" + std::to_string(r.runs) + " runs exact and minimal"};
}

Outcome shadow_clean() {
  const LearningRuns& r = idempotent_runs();
  return {r.mismatches == 0,
          std::to_string(r.mismatches) + " inferred answers refuted over " + std::to_string(r.runs) + " runs"};
}

Outcome consistency_checkers() {
  std::size_t agree = 0, total = 0, violations = 0;
  SplitMix64 rng(31337);
  auto instance = [&](std::size_t& k) {
    k = 1 + rng.uniform_below(3);
    return minimize(random_dfa(1 + rng.uniform_below(6), letters(k), 0.4, rng.next()));
  };
  for (int i = 0; i < 200; ++i) {
    std::size_t k;
    Dfa d = instance(k);
    Srs r(letters(k), random_rules(rng, k, 3, 2));
    auto v = check_consistency(r, d);
    auto step = [&](const Word& w) { return oracle::one_step(oracle::pairs_of(r), w); };
    agree += oracle::verdict_agrees(d, step, 6, oracle::Kind::two_sided, pair_of(v));
    violations += !v.consistent();
    ++total;
  }
  for (int i = 0; i < 200; ++i) {
    std::size_t k;
    Dfa d = instance(k);
    Alphabet sigma = letters(k);
    std::vector<ControlledRule> rules;
    std::vector<oracle::ControlledRule> ref;
    for (const auto& r : random_rules(rng, k, 3, 2)) {
      Regex ex = random_context(rng, sigma), ey = random_context(rng, sigma);
      rules.push_back({r.lhs, r.rhs, ex, ey});
      ref.push_back({r.lhs, r.rhs, ex, ey});
    }
    auto v = check_consistency_csrs(Csrs(sigma, rules), d);
    auto step = [&](const Word& w) { return oracle::controlled_step(ref, w); };
    agree += oracle::verdict_agrees(d, step, 6, oracle::Kind::two_sided, pair_of(v));
    violations += !v.consistent();
    ++total;
  }
  for (int i = 0; i < 200; ++i) {
    std::size_t k;
    Dfa d = instance(k);
    Srs r(letters(k), random_rules(rng, k, 3, 2, true), true);
    auto step = [&](const Word& w) { return oracle::one_step(oracle::pairs_of(r), w); };
    bool positive = i % 2 == 0;
    auto v = check_consistency_one_sided(r, d, positive ? Polarity::positive : Polarity::negative);
    agree += oracle::verdict_agrees(d, step, 6, positive ? oracle::Kind::positive : oracle::Kind::negative, pair_of(v));
    violations += !v.consistent();
    ++total;
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree with brute force (" +
                              std::to_string(violations) + " inconsistent)"};
}

Outcome convolution_eq() {
  bool pass = true;
  std::string detail;
  for (const std::string scenario : {"conv-pattern", "conv-random"}) {
    BenchConfig c;
    c.scenario = scenario;
    c.trials = 10;
    auto rows = run_bench(c);
    std::vector<double> eq;
    std::size_t worst = 0;
    bool exact = true;
    for (const auto& r : rows) {
      eq.push_back(r.eq_decrease_pct);
      worst = std::max(worst, r.advice.eq_asked);
      exact = exact && r.plain_exact && r.advice_exact;
    }
    double mean = summarize(eq).mean;
    pass = pass && mean >= 85.0 && worst <= 10 && exact;
    detail += scenario + fmt(" mean EQ decrease %.2f%%, max advice EQ %.0f; ", mean, static_cast<double>(worst));
  }
  return {pass, detail.substr(0, detail.size() - 2)};
}

Outcome idempotent_eq() {
  BenchConfig c;
  c.scenario = "idempotent";
  c.trials = 50;
  auto rows = run_bench(c);
  std::vector<double> eq, mq;
  std::size_t negative = 0;
  for (const auto& r : rows) {
    eq.push_back(r.eq_decrease_pct);
    mq.push_back(r.mq_decrease_pct);
    negative += r.mq_decrease_pct < 0;
  }
  double mean = summarize(eq).mean;
  return {mean >= 5.0, fmt("mean EQ decrease %.2f%%, mean MQ decrease %.2f%%, ", mean, summarize(mq).mean) +
                           std::to_string(negative) + " trials with negative MQ savings"};
}

Outcome bitadd() {
  BenchRow r = run_trial("bitadd", 0, 1, LearnerConfig{});
  bool pass = r.target_states == 3 && r.plain.eq_asked == 1 && r.mq_decrease_pct >= 20.0;
  return {pass, fmt("%.0f states, %.0f EQ, MQ %.0f -> %.0f", static_cast<double>(r.target_states),
                    static_cast<double>(r.plain.eq_asked), static_cast<double>(r.plain.mq_asked),
                    static_cast<double>(r.advice.mq_asked)) +
                    fmt(" (%.2f%%)", r.mq_decrease_pct)};
}

Outcome partial_csrs_mq() {
  BenchConfig c;
  c.scenario = "partial-csrs";
  c.trials = 20;
  auto rows = run_bench(c);
  std::vector<double> mq;
  for (const auto& r : rows) mq.push_back(r.mq_decrease_pct);
  Summary s = summarize(mq);
  return {s.mean >= 10.0, fmt("mean MQ decrease %.2f%% (min %.2f%%, max %.2f%%)", s.mean, s.min, s.max)};
}

using Step = std::function<std::set<Word>(const Word&)>;

Word random_descent(const Step& step, Word w, SplitMix64& rng) {
  while (true) {
    auto next = step(w);
    if (next.empty()) return w;
    auto it = next.begin();
    std::advance(it, rng.uniform_below(next.size()));
    w = *it;
  }
}

Outcome convergence() {
  struct Family {
    std::string name;
    bool proved;
    std::size_t k;
    Step step;
    std::function<Word(const Word&)> fixed;
  };
  std::vector<Family> families;
  Alphabet s4 = letters(4);
  auto add_srs = [&](const std::string& name, const Srs& r) {
    families.push_back({name, check_convergence(r).proved(), r.alphabet().size(),
                        [r](const Word& w) { return single_step(r, w); },
                        [r](const Word& w) { return normal_form(r, w); }});
  };
  add_srs("idempotent", idempotent_srs(s4, {Word{0}, Word{1, 2}}));
  add_srs("commutation", commutation_srs(s4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  add_srs("convolution", convolution_srs(letters(2), Alphabet({"c", "d"})));
  add_srs("bitadd", bitadd_srs());
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Csrs c = encode_partial_dfa(prune_transitions(random_dfa(60, s4, 0.1, seed), 10 + 5 * seed, seed));
    families.push_back({"partial-dfa " + std::to_string(seed), check_convergence(c).proved(), 4,
                        [c](const Word& w) { return csrs_single_step(c, w); },
                        [c](const Word& w) { return csrs_normal_form(c, w); }});
  }
  bool pass = true;
  std::string detail;
  SplitMix64 rng(8);
  for (const auto& f : families) {
    std::size_t disagreements = 0;
    for (int i = 0; i < 1000; ++i) {
      Word w = random_word(rng, 0, 12, f.k);
      Word expected = f.fixed(w);
      for (int j = 0; j < 100; ++j) disagreements += random_descent(f.step, w, rng) != expected;
    }
    pass = pass && f.proved && disagreements == 0;
    if (!f.proved || disagreements) detail += f.name + (f.proved ? "" : " unproved") + " " +
                                              std::to_string(disagreements) + " disagreements; ";
  }
  if (detail.empty()) detail = std::to_string(families.size()) + " families proved, 100x1000 random descents agree";
  return {pass, detail};
}

Outcome product_size() {
  Alphabet h1({"a", "b", "c", "d"}), h2({"e", "f", "g", "h"});
  SplitMix64 rng(3);
  Dfa p1 = pattern_dfa({random_word(rng, 15, 15, 4)}, PatternMode::any, h1);
  Dfa p2 = pattern_dfa({random_word(rng, 12, 12, 4)}, PatternMode::any, h2);
  std::size_t witness = convolution(p1, p2).num_states();
  bool bounded = true;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Dfa d1 = random_dfa(2 + seed % 7, letters(2), 0.3, seed);
    Dfa d2 = random_dfa(2 + seed % 5, Alphabet({"c", "d"}), 0.3, seed + 500);
    bounded = bounded &&
              convolution(d1, d2).num_states() <= minimize(d1).num_states() * minimize(d2).num_states();
  }
  return {p1.num_states() == 16 && p2.num_states() == 13 && witness == 208 && bounded,
          std::to_string(p1.num_states()) + " x " + std::to_string(p2.num_states()) + " -> " +
              std::to_string(witness) + " states; product bound " + (bounded ? "holds" : "violated") +
              " on 100 random pairs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"learned automata are exact and minimal in every mode", exact_and_minimal},
      {"shadow teacher confirms every inferred answer", shadow_clean},
      {"consistency checkers agree with brute force", consistency_checkers},
      {"convolution advice cuts equivalence queries", convolution_eq},
      {"idempotent advice cuts equivalence queries", idempotent_eq},
      {"bitwise addition advice cuts membership queries", bitadd},
      {"partial-DFA advice cuts membership queries", partial_csrs_mq},
      {"advice families are convergent", convergence},
      {"convolution size is the product", product_size},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int n = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %d: %s: %s\n", o.pass ? "PASS" : "FAIL", n, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
