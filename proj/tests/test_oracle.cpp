#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "advlearn/automata.hpp"
#include "advlearn/error.hpp"
#include "advlearn/generators.hpp"
#include "advlearn/oracle.hpp"

using namespace advlearn;
using namespace fixtures;

namespace {

// Little-endian decode of one bit track of a bitadd word.
std::uint64_t track(const Word& w, int bit) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < w.size(); ++i) v |= static_cast<std::uint64_t>((w[i] >> (2 - bit)) & 1u) << i;
  return v;
}

}  // namespace

TEST_CASE("membership") {
  DfaTeacher all(accept_all());
  for (const auto& u : oracle::words_upto(2, 3)) CHECK(all.membership(u));
  CHECK(all.counters().mq == 15);

  DfaTeacher par(parity());
  CHECK_FALSE(par.membership(Word{0}));
  CHECK_THROWS_AS(par.membership(Word{2}), input_error);

  DfaTeacher add(bitadd_dfa());
  Alphabet sigma = bitadd_alphabet();
  CHECK_FALSE(add.membership(sigma.parse_word("(1,0,1) (1,1,0)")));
  for (const auto& u : oracle::words_upto(8, 3)) {
    bool sum = track(u, 0) + track(u, 1) == track(u, 2);
    CHECK(add.membership(u) == sum);
  }
}

TEST_CASE("equivalence") {
  DfaTeacher t(parity());
  CHECK_FALSE(t.equivalence(parity()).has_value());
  CHECK_FALSE(t.equivalence(parity_duplicated()).has_value());
  CHECK(t.equivalence(accept_all()) == Word{0});
  CHECK(t.counters().eq == 3);
  CHECK_THROWS_AS(t.equivalence(mod3()), input_error);

  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Dfa target = random_dfa(1 + seed % 7, ab(), 0.4, seed);
    Dfa h = random_dfa(1 + seed % 5, ab(), 0.4, seed + 1000);
    DfaTeacher teacher(target);
    auto cex = teacher.equivalence(h);
    CHECK(cex.has_value() == !(minimize(h) == minimize(target)));
    if (cex) CHECK(h.accepts(*cex) != target.accepts(*cex));
  }
}

TEST_CASE("verify does not count") {
  DfaTeacher t(parity(), true);
  CHECK(t.shadow());
  CHECK(t.verify(Word{}, true));
  CHECK_FALSE(t.verify(Word{0}, true));
  CHECK(t.counters().mq == 0);
  CHECK(t.counters().verified == 2);
  CHECK(t.counters().mismatches == 1);
  CHECK(t.mismatched_words() == std::vector<Word>{Word{0}});
}

TEST_CASE("mealy teacher") {
  MealyTeacher c(constant());
  CHECK(c.last_output(Word{0, 1}) == 0);
  MealyTeacher id(identity());
  CHECK(id.last_output(Word{0, 1}) == 1);
  MealyTeacher tg(toggle());
  CHECK(tg.last_output(Word{0, 0, 0}) == 0);
  CHECK(tg.last_output(Word{0, 0}) == 1);
  CHECK_THROWS_AS(tg.last_output(Word{}), input_error);
  CHECK(tg.counters().mq == 2);

  CHECK_FALSE(tg.equivalence(toggle()).has_value());
  auto cex = tg.equivalence(MealyMachine(ab(), Alphabet({"0", "1"}), 1, 0, {0, 0}, {0, 0}));
  REQUIRE(cex.has_value());
  CHECK(*cex == Word{0, 0});
  CHECK(tg.verify(Word{0}, 0));
  CHECK(tg.verify_counterexample(MealyMachine(ab(), Alphabet({"0", "1"}), 1, 0, {0, 0}, {0, 0}), Word{0, 1}));
  CHECK(tg.counters().eq == 2);
}
