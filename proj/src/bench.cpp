#include "advlearn/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "advlearn/automata.hpp"
#include "advlearn/error.hpp"
#include "advlearn/generators.hpp"
#include "advlearn/rng.hpp"

namespace advlearn {

namespace {

std::size_t draw_between(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  if (hi < lo) throw input_error("empty size range");
  return lo + static_cast<std::size_t>(rng.uniform_below(hi - lo + 1));
}

Word random_word(SplitMix64& rng, std::size_t length, std::size_t alphabet_size) {
  Word w(length);
  for (auto& s : w) s = static_cast<Symbol>(rng.uniform_below(alphabet_size));
  return w;
}

Alphabet letters(std::initializer_list<const char*> names) {
  return Alphabet(std::vector<std::string>(names.begin(), names.end()));
}

std::size_t lo_or(const ScenarioParams& p, std::size_t fallback) { return p.min_states.value_or(fallback); }
std::size_t hi_or(const ScenarioParams& p, std::size_t fallback) { return p.max_states.value_or(fallback); }

// Redraws until the minimized component has a size within the range, so
// that degenerate components (e.g. with no reachable accepting state) are
// skipped.
Dfa random_component(SplitMix64& rng, const Alphabet& sigma, const ScenarioParams& p) {
  const std::size_t lo = lo_or(p, 15), hi = hi_or(p, 30);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::size_t n = draw_between(rng, lo, hi);
    Dfa d = minimize(random_dfa(n, sigma, p.accept_prob, rng.next()));
    if (d.num_states() >= lo && d.num_states() <= hi) return d;
  }
  throw input_error("no random component of the requested size");
}

Dfa pattern_component(SplitMix64& rng, const Alphabet& sigma, const ScenarioParams& p) {
  std::vector<Word> patterns;
  for (std::size_t i = 0; i < p.patterns_per_component; ++i)
    patterns.push_back(random_word(rng, p.pattern_length, sigma.size()));
  return pattern_dfa(patterns, PatternMode::any, sigma);
}

std::string size_note(const Dfa& d1, const Dfa& d2) {
  return std::to_string(minimize(d1).num_states()) + "x" + std::to_string(minimize(d2).num_states());
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"idempotent", "conv-pattern", "conv-random",
                                              "conv-shared", "bitadd",       "partial-csrs"};
  return names;
}

bool is_scenario(const std::string& name) {
  const auto& names = scenario_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

BenchInstance make_instance(const std::string& scenario, std::uint64_t seed, const ScenarioParams& params) {
  SplitMix64 rng(seed);
  if (scenario == "idempotent") {
    Alphabet sigma = letters({"a", "b", "c", "d"});
    std::size_t n = draw_between(rng, lo_or(params, 100), hi_or(params, 300));
    Dfa target = make_letter_idempotent(random_dfa(n, sigma, params.accept_prob, rng.next()), 0);
    return {target, TwoSidedAdvice{idempotent_srs(sigma, {Word{0}})}, "random " + std::to_string(n) + ", a a -> a"};
  }
  if (scenario == "conv-pattern" || scenario == "conv-random") {
    Alphabet s1 = scenario == "conv-pattern" ? letters({"a", "b", "c", "d"}) : letters({"a", "b"});
    Alphabet s2 = scenario == "conv-pattern" ? letters({"e", "f", "g", "h"}) : letters({"c", "d"});
    Dfa d1 = scenario == "conv-pattern" ? pattern_component(rng, s1, params) : random_component(rng, s1, params);
    Dfa d2 = scenario == "conv-pattern" ? pattern_component(rng, s2, params) : random_component(rng, s2, params);
    return {convolution(d1, d2), TwoSidedAdvice{convolution_srs(s1, s2)}, "convolution " + size_note(d1, d2)};
  }
  if (scenario == "conv-shared") {
    Alphabet s1 = letters({"a", "b", "c", "d", "e"});
    Alphabet s2 = letters({"b", "c", "d", "e", "f"});
    Dfa d1 = random_component(rng, s1, params);
    Dfa d2 = random_component(rng, s2, params);
    return {convolution(d1, d2), TwoSidedAdvice{convolution_srs(s1, s2)}, "shared convolution " + size_note(d1, d2)};
  }
  if (scenario == "bitadd") return {bitadd_dfa(), TwoSidedAdvice{bitadd_srs()}, "bitwise addition"};
  if (scenario == "partial-csrs") {
    Alphabet sigma = letters({"a", "b", "c", "d"});
    std::size_t n = draw_between(rng, lo_or(params, 100), hi_or(params, 300));
    Dfa target = random_dfa(n, sigma, params.accept_prob, rng.next());
    std::size_t keep = draw_between(rng, params.min_keep, params.max_keep);
    PartialDfa b = prune_transitions(target, keep, rng.next());
    Csrs c = encode_partial_dfa(b);
    return {target, ControlledAdvice{c},
            "random " + std::to_string(n) + ", " + std::to_string(c.size()) + " controlled rules"};
  }
  throw input_error("unknown scenario '" + scenario + "'");
}

double percent_decrease(std::size_t before, std::size_t after) {
  if (before == 0) return 0.0;
  return 100.0 * (static_cast<double>(before) - static_cast<double>(after)) / static_cast<double>(before);
}

BenchRow run_trial(const std::string& scenario, std::size_t trial, std::uint64_t seed, const LearnerConfig& learner,
                   const ScenarioParams& params, bool shadow) {
  auto start = std::chrono::steady_clock::now();
  BenchInstance inst = make_instance(scenario, seed, params);
  if (auto verdict = check_advice(inst.advice, inst.target); !verdict.consistent())
    throw advice_error(scenario + " advice is inconsistent with its target (seed " + std::to_string(seed) + ")");
  Dfa minimal = minimize(inst.target);
  AdviceOptions options;
  options.shadow = shadow;
  RunOutcome plain = learn_with_advice(inst.target, NoAdvice{}, learner, options);
  RunOutcome advised = learn_with_advice(inst.target, inst.advice, learner, options);
  BenchRow row;
  row.scenario = scenario;
  row.trial = trial;
  row.seed = seed;
  row.target_states = minimal.num_states();
  row.plain = plain.stats;
  row.advice = advised.stats;
  row.learned_plain = plain.dfa.num_states();
  row.learned_advice = advised.dfa.num_states();
  row.plain_exact = !shortest_counterexample(plain.dfa, inst.target) && row.learned_plain == row.target_states;
  row.advice_exact = !shortest_counterexample(advised.dfa, inst.target) && row.learned_advice == row.target_states;
  row.shadow_mismatches = plain.shadow_mismatches + advised.shadow_mismatches;
  row.mq_decrease_pct = percent_decrease(plain.stats.mq_asked, advised.stats.mq_asked);
  row.eq_decrease_pct = percent_decrease(plain.stats.eq_asked, advised.stats.eq_asked);
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (!is_scenario(config.scenario)) throw input_error("unknown scenario '" + config.scenario + "'");
  std::vector<BenchRow> rows(config.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= config.trials) return;
      try {
        rows[i] = run_trial(config.scenario, i, config.seed_base + i, config.learner, config.params, config.shadow);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
      }
    }
  };
  std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, config.trials));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) return {};
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi, std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size())};
}

std::string csv_header() {
  return "scenario,trial,seed,target_states,mq_plain,eq_plain,mq_advice_asked,mq_advice_inferred,"
         "eq_advice_asked,eq_advice_inferred,mq_decrease_pct,eq_decrease_pct,wall_ms";
}

namespace {

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string csv_row(const BenchRow& r) {
  return r.scenario + "," + std::to_string(r.trial) + "," + std::to_string(r.seed) + "," +
         std::to_string(r.target_states) + "," + std::to_string(r.plain.mq_asked) + "," +
         std::to_string(r.plain.eq_asked) + "," + std::to_string(r.advice.mq_asked) + "," +
         std::to_string(r.advice.mq_inferred) + "," + std::to_string(r.advice.eq_asked) + "," +
         std::to_string(r.advice.eq_inferred) + "," + fixed(r.mq_decrease_pct) + "," + fixed(r.eq_decrease_pct) +
         "," + fixed(r.wall_ms, 1);
}

std::string csv_summary(const std::vector<BenchRow>& rows) {
  std::vector<double> mq, eq;
  double wall = 0;
  for (const auto& r : rows) {
    mq.push_back(r.mq_decrease_pct);
    eq.push_back(r.eq_decrease_pct);
    wall += r.wall_ms;
  }
  Summary m = summarize(mq), e = summarize(eq);
  auto triple = [](const Summary& s) { return fixed(s.min) + "/" + fixed(s.max) + "/" + fixed(s.mean); };
  std::string scenario = rows.empty() ? "" : rows.front().scenario;
  return scenario + ",summary,,,,,,,,," + triple(m) + "," + triple(e) + "," + fixed(wall, 1);
}

}  // namespace advlearn
