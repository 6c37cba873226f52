#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "advlearn/automata.hpp"
#include "advlearn/bench.hpp"
#include "advlearn/error.hpp"
#include "advlearn/generators.hpp"

using namespace advlearn;
using namespace fixtures;

namespace {

ScenarioParams small_params(const std::string& scenario) {
  ScenarioParams p;
  if (scenario == "idempotent" || scenario == "partial-csrs") {
    p.min_states = 15;
    p.max_states = 25;
    p.min_keep = 4;
    p.max_keep = 8;
  } else if (scenario == "conv-pattern") {
    p.pattern_length = 3;
  } else if (scenario == "conv-random" || scenario == "conv-shared") {
    p.min_states = 2;
    p.max_states = 4;
    p.accept_prob = 0.4;
  }
  return p;
}

std::string without_wall(const std::string& row) { return row.substr(0, row.rfind(',')); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out(1);
  for (char c : s) {
    if (c == sep)
      out.emplace_back();
    else
      out.back() += c;
  }
  return out;
}

}  // namespace

TEST_CASE("scenario names") {
  CHECK(scenario_names().size() == 6);
  for (const auto& s : scenario_names()) CHECK(is_scenario(s));
  CHECK_FALSE(is_scenario("conv"));
  CHECK_THROWS_AS(make_instance("conv", 1), input_error);
  BenchConfig bad;
  bad.scenario = "nope";
  CHECK_THROWS_AS(run_bench(bad), input_error);
}

TEST_CASE("percent_decrease and summarize") {
  CHECK(percent_decrease(201, 115) == doctest::Approx(42.7860696));
  CHECK(percent_decrease(0, 5) == 0.0);
  CHECK(percent_decrease(4, 6) == doctest::Approx(-50.0));
  Summary s = summarize({3.0, -1.0, 4.0});
  CHECK(s.min == -1.0);
  CHECK(s.max == 4.0);
  CHECK(s.mean == doctest::Approx(2.0));
  CHECK(summarize({}).mean == 0.0);
}

TEST_CASE("instances carry consistent advice") {
  for (const auto& scenario : scenario_names())
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      BenchInstance a = make_instance(scenario, seed, small_params(scenario));
      BenchInstance b = make_instance(scenario, seed, small_params(scenario));
      CHECK(a.target == b.target);
      CHECK(a.description == b.description);
      CHECK(check_advice(a.advice, a.target).consistent());
    }
}

TEST_CASE("instance shapes") {
  BenchInstance idem = make_instance("idempotent", 5, small_params("idempotent"));
  CHECK(idem.target.alphabet().size() == 4);
  for (State q = 0; q < idem.target.num_states(); ++q)
    CHECK(idem.target.next(idem.target.next(q, 0), 0) == idem.target.next(q, 0));

  BenchInstance conv = make_instance("conv-random", 2, small_params("conv-random"));
  CHECK(conv.target.alphabet().tokens() == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(minimize(conv.target) == conv.target);

  BenchInstance shared = make_instance("conv-shared", 2, small_params("conv-shared"));
  CHECK(shared.target.alphabet().size() == 6);

  BenchInstance add = make_instance("bitadd", 9);
  CHECK(add.target == bitadd_dfa());

  BenchInstance part = make_instance("partial-csrs", 3, small_params("partial-csrs"));
  REQUIRE(std::holds_alternative<ControlledAdvice>(part.advice));
  CHECK(std::get<ControlledAdvice>(part.advice).csrs.size() <= 8);
}

TEST_CASE("bitadd trial") {
  BenchRow row = run_trial("bitadd", 0, 1, LearnerConfig{}, {}, true);
  CHECK(row.target_states == 3);
  CHECK(row.plain.mq_asked == 201);
  CHECK(row.plain.eq_asked == 1);
  CHECK(row.advice.mq_asked == 115);
  CHECK(row.advice.mq_asked + row.advice.mq_inferred == 201);
  CHECK(row.plain_exact);
  CHECK(row.advice_exact);
  CHECK(row.shadow_mismatches == 0);
  CHECK(without_wall(csv_row(row)) == "bitadd,0,1,3,201,1,115,86,1,0,42.79,0.00");
}

TEST_CASE("trials are exact and shadow-clean") {
  for (const auto& scenario : scenario_names()) {
    BenchConfig c;
    c.scenario = scenario;
    c.trials = 3;
    c.params = small_params(scenario);
    c.shadow = true;
    for (const auto& row : run_bench(c)) {
      CHECK(row.plain_exact);
      CHECK(row.advice_exact);
      CHECK(row.shadow_mismatches == 0);
      CHECK(row.learned_plain == row.learned_advice);
      CHECK(row.mq_decrease_pct == doctest::Approx(percent_decrease(row.plain.mq_asked, row.advice.mq_asked)));
    }
  }
}

TEST_CASE("bench output is deterministic and ordered") {
  BenchConfig c;
  c.scenario = "conv-random";
  c.trials = 5;
  c.seed_base = 40;
  c.params = small_params(c.scenario);
  auto serial = run_bench(c);
  c.jobs = 3;
  auto parallel = run_bench(c);
  REQUIRE(serial.size() == 5);
  REQUIRE(parallel.size() == 5);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].trial == i);
    CHECK(serial[i].seed == 40 + i);
    CHECK(without_wall(csv_row(serial[i])) == without_wall(csv_row(parallel[i])));
  }
}

TEST_CASE("csv layout") {
  auto header = split(csv_header(), ',');
  CHECK(header.size() == 13);
  CHECK(header.front() == "scenario");
  CHECK(header.back() == "wall_ms");

  BenchRow a, b;
  a.scenario = b.scenario = "idempotent";
  a.mq_decrease_pct = 10;
  b.mq_decrease_pct = -2.5;
  a.eq_decrease_pct = 50;
  b.eq_decrease_pct = 0;
  a.wall_ms = 1.25;
  b.wall_ms = 2;
  CHECK(split(csv_row(a), ',').size() == 13);
  std::string summary = csv_summary({a, b});
  CHECK(summary == "idempotent,summary,,,,,,,,,-2.50/10.00/3.75,0.00/50.00/25.00,3.2");
  CHECK(split(summary, ',').size() == 13);
}
