#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "advlearn/automata.hpp"
#include "advlearn/error.hpp"
#include "advlearn/generators.hpp"
#include "advlearn/learner.hpp"
#include "advlearn/oracle.hpp"

using namespace advlearn;
using namespace fixtures;

namespace {

ObservationTable<bool>::Oracle member_of(const Dfa& d) {
  return [d](const Word& w) { return oracle::member(d, w); };
}

struct Run {
  LearnResult result;
  std::vector<std::size_t> hypothesis_sizes;
  TeacherCounters teacher;
};

Run learn(const Dfa& target, const LearnerConfig& config = {}) {
  DfaTeacher teacher(target);
  std::vector<std::size_t> sizes;
  auto eq = [&](const Dfa& h) {
    sizes.push_back(h.num_states());
    return teacher.equivalence(h);
  };
  LearnResult r = lstar_learn(target.alphabet(), teacher.membership_channel(), eq, config);
  return Run{r, sizes, teacher.counters()};
}

std::vector<LearnerConfig> all_configs() {
  std::vector<LearnerConfig> out;
  for (auto init : {InitialTests::epsilon_only, InitialTests::epsilon_plus_alphabet})
    for (auto cex : {CexProcessing::all_prefixes, CexProcessing::all_suffixes}) {
      LearnerConfig c;
      c.initial_tests = init;
      c.cex_processing = cex;
      out.push_back(c);
    }
  return out;
}

}  // namespace

TEST_CASE("initial tests") {
  CHECK(initial_tests(ab(), InitialTests::epsilon_only) == std::vector<Word>{Word{}});
  CHECK(initial_tests(ab(), InitialTests::epsilon_plus_alphabet) == std::vector<Word>{Word{}, Word{0}, Word{1}});
}

TEST_CASE("observation table bookkeeping") {
  std::size_t calls = 0;
  Dfa p = parity();
  ObservationTable<bool> t(ab(), {Word{}}, [&](const Word& w) {
    ++calls;
    return oracle::member(p, w);
  });
  CHECK(t.selectors() == std::vector<Word>{Word{}});
  CHECK(t.boundary() == std::vector<Word>{Word{0}, Word{1}});
  CHECK(t.row(Word{}) == std::vector<bool>{true});
  CHECK(t.row(Word{0}) == std::vector<bool>{false});
  CHECK_THROWS_AS(t.row(Word{0, 0}), contract_violation);
  CHECK(calls == 3);
  CHECK(t.query(Word{1}) == true);
  CHECK(calls == 3);
  CHECK(t.queries() == 3);
}

TEST_CASE("build_hypothesis") {
  ObservationTable<bool> none(ab(), {Word{}}, [](const Word&) { return false; });
  REQUIRE(none.is_closed());
  Hypothesis h = build_hypothesis(none);
  CHECK(h.dfa.num_states() == 1);
  CHECK_FALSE(h.dfa.is_accepting(0));
  CHECK(h.state_words == std::vector<Word>{Word{}});

  ObservationTable<bool> par(ab(), {Word{}}, member_of(parity()));
  CHECK_FALSE(par.is_closed());
  CHECK_THROWS_AS(build_hypothesis(par), contract_violation);
  CHECK(par.close() == 1);
  CHECK(par.selectors() == std::vector<Word>{Word{}, Word{0}});
  CHECK(par.row(Word{0, 0}) == par.row(Word{}));
  Hypothesis hp = build_hypothesis(par);
  CHECK(hp.dfa == parity());
  CHECK(hp.tests == std::vector<Word>{Word{}});
}

TEST_CASE("close_table") {
  std::size_t calls = 0;
  ObservationTable<bool> t(ab(), {Word{}}, [&](const Word&) {
    ++calls;
    return true;
  });
  std::size_t before = calls;
  CHECK(t.close() == 0);
  CHECK(calls == before);

  ObservationTable<bool> u(ab(), {Word{}}, member_of(single_a()));
  CHECK(u.unclosed_word() == Word{0});
  u.close();
  CHECK(u.selectors().at(1) == Word{0});
  CHECK(u.is_closed());
}

TEST_CASE("close keeps selector rows distinct on random targets") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Dfa d = random_dfa(3 + seed % 10, Alphabet({"a", "b", "c"}), 0.3, seed);
    ObservationTable<bool> t(d.alphabet(), initial_tests(d.alphabet(), InitialTests::epsilon_plus_alphabet),
                             member_of(d));
    t.close();
    CHECK(t.is_closed());
    std::set<std::vector<bool>> rows;
    for (const auto& s : t.selectors()) rows.insert(t.row(s));
    CHECK(rows.size() == t.selectors().size());
  }
}

TEST_CASE("process_counterexample") {
  LearnerConfig prefixes;
  ObservationTable<bool> t(ab(), {Word{}}, member_of(parity()));
  process_counterexample(t, Word{0}, prefixes);
  CHECK(t.is_selector(Word{0}));

  LearnerConfig suffixes;
  suffixes.cex_processing = CexProcessing::all_suffixes;
  ObservationTable<bool> s(ab(), {Word{}}, member_of(parity()));
  process_counterexample(s, ab().parse_word("a b a"), suffixes);
  std::set<Word> tests(s.tests().begin(), s.tests().end());
  CHECK(tests == std::set<Word>{Word{}, Word{0}, Word{1, 0}, Word{0, 1, 0}});
}

TEST_CASE("lstar_learn examples") {
  LearnerConfig eps;
  eps.initial_tests = InitialTests::epsilon_only;
  Run all = learn(accept_all(), eps);
  CHECK(all.result.dfa.num_states() == 1);
  CHECK(all.result.counts.eq == 1);

  Run par = learn(parity());
  CHECK(par.result.dfa.num_states() == 2);
  CHECK_FALSE(shortest_counterexample(par.result.dfa, parity()).has_value());

  Run add = learn(bitadd_dfa());
  CHECK(add.result.dfa.num_states() == 3);
  CHECK(add.result.counts.eq == 1);
  CHECK(add.result.counts.mq == 201);
}

TEST_CASE("learned automata are minimal and exact") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed)
    for (const auto& config : all_configs()) {
      Dfa d = random_dfa(5 + seed, Alphabet({"a", "b", "c"}), 0.2, seed);
      Dfa m = minimize(d);
      Run run = learn(d, config);
      const Dfa& out = run.result.dfa;
      REQUIRE_FALSE(shortest_counterexample(out, d).has_value());
      CHECK(out.num_states() == m.num_states());
      CHECK(minimize(out).num_states() == out.num_states());
      CHECK(run.result.counts.eq <= m.num_states());
      CHECK(run.teacher.eq == run.result.counts.eq);
      CHECK(run.teacher.mq == run.result.counts.mq);
      for (std::size_t i = 1; i < run.hypothesis_sizes.size(); ++i) {
        if (config.cex_processing == CexProcessing::all_prefixes)
          CHECK(run.hypothesis_sizes[i] > run.hypothesis_sizes[i - 1]);
        else
          CHECK(run.hypothesis_sizes[i] >= run.hypothesis_sizes[i - 1]);
      }
    }
}

TEST_CASE("learning is deterministic") {
  Dfa d = random_dfa(30, Alphabet({"a", "b", "c", "d"}), 0.1, 99);
  Run a = learn(d), b = learn(d);
  CHECK(a.result.dfa == b.result.dfa);
  CHECK(a.result.counts.mq == b.result.counts.mq);
  CHECK(a.result.counts.eq == b.result.counts.eq);
  CHECK(a.result.counts.cex_total_length == b.result.counts.cex_total_length);
}

TEST_CASE("divergence is reported") {
  Dfa target = parity();
  auto mq = [&](const Word& w) { return oracle::member(target, w); };
  // Claims "a" as a counterexample whatever the hypothesis says.
  auto liar = [](const Dfa&) -> std::optional<Word> { return Word{0}; };
  CHECK_THROWS_AS(lstar_learn(ab(), mq, liar), divergence_error);

  LearnerConfig one;
  one.max_rounds = 1;
  DfaTeacher teacher(random_dfa(20, ab(), 0.3, 3));
  CHECK_THROWS_AS(lstar_learn(ab(), teacher.membership_channel(), teacher.equivalence_channel(), one),
                  divergence_error);
  LearnerConfig zero;
  zero.max_rounds = 0;
  CHECK_THROWS_AS(lstar_learn(ab(), mq, liar, zero), input_error);
}

TEST_CASE("lstar_mealy examples") {
  for (const MealyMachine& target : {constant(), identity(), toggle()}) {
    MealyTeacher teacher(target);
    auto r = lstar_mealy(target.inputs(), target.outputs(), teacher.output_channel(), teacher.equivalence_channel());
    CHECK(r.machine.num_states() == minimize(target).num_states());
    CHECK_FALSE(shortest_counterexample(r.machine, target).has_value());
  }
  MealyTeacher id(identity());
  auto r = lstar_mealy(ab(), ab(), id.output_channel(), id.equivalence_channel());
  CHECK(r.machine.num_states() == 1);
  CHECK(r.machine.output(0, 0) == 0);
  CHECK(r.machine.output(0, 1) == 1);
}

TEST_CASE("lstar_mealy on random machines") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed)
    for (const auto& config : all_configs()) {
      Dfa shape = random_dfa(4 + seed % 6, ab(), 0.5, seed);
      std::vector<Symbol> lambda(shape.transitions().size());
      for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = shape.is_accepting(shape.transitions()[i]) ? 1 : 0;
      MealyMachine target(ab(), Alphabet({"x", "y"}), shape.num_states(), 0, shape.transitions(), lambda);
      MealyTeacher teacher(target);
      auto r = lstar_mealy(ab(), target.outputs(), teacher.output_channel(), teacher.equivalence_channel(), config);
      REQUIRE_FALSE(shortest_counterexample(r.machine, target).has_value());
      CHECK(r.machine.num_states() == minimize(target).num_states());
    }
}
