#pragma once

// Paired benchmark trials: every trial learns one target twice, without and
// with advice, under the same learner configuration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advlearn/advice.hpp"

namespace advlearn {

/// idempotent, conv-pattern, conv-random, conv-shared, bitadd, partial-csrs.
const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

struct ScenarioParams {
  /// Target (or component) size range; scenario default when unset.
  std::optional<std::size_t> min_states;
  std::optional<std::size_t> max_states;
  double accept_prob = 0.1;
  std::size_t pattern_length = 10;
  std::size_t patterns_per_component = 2;
  std::size_t min_keep = 10;
  std::size_t max_keep = 20;
};

struct BenchInstance {
  Dfa target;
  AdviceMode advice;
  std::string description;
};

/// Deterministic in (scenario, seed, params). Throws input_error on an
/// unknown scenario.
BenchInstance make_instance(const std::string& scenario, std::uint64_t seed, const ScenarioParams& params = {});

struct BenchRow {
  std::string scenario;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t target_states = 0;
  QueryStats plain;
  QueryStats advice;
  std::size_t learned_plain = 0;
  std::size_t learned_advice = 0;
  bool plain_exact = false;
  bool advice_exact = false;
  std::size_t shadow_mismatches = 0;
  double mq_decrease_pct = 0.0;
  double eq_decrease_pct = 0.0;
  double wall_ms = 0.0;
};

struct BenchConfig {
  std::string scenario;
  std::size_t trials = 10;
  std::uint64_t seed_base = 1;
  LearnerConfig learner;
  ScenarioParams params;
  bool shadow = false;
  /// Worker threads; rows come back in trial order either way.
  std::size_t jobs = 1;
};

/// Percentage decrease from `before` to `after`; 0 when `before` is 0.
double percent_decrease(std::size_t before, std::size_t after);

/// Checks the advice against the target first (advice_error on failure).
BenchRow run_trial(const std::string& scenario, std::size_t trial, std::uint64_t seed, const LearnerConfig& learner,
                   const ScenarioParams& params = {}, bool shadow = false);

/// Trial i uses seed seed_base + i.
std::vector<BenchRow> run_bench(const BenchConfig& config);

struct Summary {
  double min = 0, max = 0, mean = 0;
};
Summary summarize(const std::vector<double>& values);

std::string csv_header();
std::string csv_row(const BenchRow& row);
/// `scenario,summary,...` with "min/max/mean" in the two percentage columns.
std::string csv_summary(const std::vector<BenchRow>& rows);

}  // namespace advlearn
