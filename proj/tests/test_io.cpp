#include <cstdio>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "advlearn/advice.hpp"
#include "advlearn/automata.hpp"
#include "advlearn/error.hpp"
#include "advlearn/generators.hpp"
#include "advlearn/io.hpp"

using namespace advlearn;
using namespace fixtures;

namespace {

std::size_t error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const parse_error& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("dfa text format") {
  const char* text =
      "# parity of a\n"
      "alphabet: a b\n"
      "states: even odd\n"
      "initial: even\n"
      "accepting: even   # comment after a header\n"
      "\n"
      "trans: even a odd\n"
      "trans: even b even\n"
      "trans: odd a even\n"
      "trans: odd b odd\n";
  Dfa d = parse_dfa(text);
  CHECK(d == parity());
  CHECK(serialize(d) ==
        "alphabet: a b\nstates: q0 q1\ninitial: q0\naccepting: q0\n"
        "trans: q0 a q1\ntrans: q0 b q0\ntrans: q1 a q0\ntrans: q1 b q1\n");
  CHECK(std::holds_alternative<Dfa>(parse_automaton(text)));
}

TEST_CASE("missing transitions") {
  const char* text = "alphabet: a b\nstates: s t\ninitial: s\naccepting: t\ntrans: s a t\n";
  CHECK_THROWS_AS(parse_dfa(text), parse_error);
  Dfa d = parse_dfa(text, true);
  CHECK(d.num_states() == 3);
  for (const auto& w : oracle::words_upto(2, 4)) CHECK(d.accepts(w) == (w == Word{0}));
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_line([] { parse_dfa("alphabet: a\nstates: q0\ninitial: q0\ntrans: q0 b q0\n"); }) == 4);
  CHECK(error_line([] { parse_dfa("alphabet: a\nstates: q0\ninitial: q9\ntrans: q0 a q0\n"); }) == 3);
  CHECK(error_line([] { parse_dfa("alphabet: a\nstates: q0\nbogus: 1\n"); }) == 3);
  CHECK(error_line([] { parse_dfa("alphabet: a\nstates: q0\ninitial: q0\ntrans: q0 a\n"); }) == 4);
  CHECK(error_line([] { parse_srs("a b -> a\nb a a\n"); }) == 2);
  CHECK(error_line([] { parse_srs("a -> \n"); }) == 1);
  CHECK(error_line([] { parse_csrs("a -> b | ex = (a\n"); }) == 1);
  try {
    parse_regex("(a+b", ab());
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(e.column() == 5);
  }
}

TEST_CASE("mealy text format") {
  MealyMachine m = toggle();
  std::string text = serialize(m);
  CHECK(text.find("outputs: 0 1") != std::string::npos);
  CHECK(parse_mealy(text) == m);
  CHECK(std::holds_alternative<MealyMachine>(parse_automaton(text)));
  MealyMachine inferred = parse_mealy(
      "alphabet: a\nstates: s\ninitial: s\ntrans: s a s\nout: s a y\n");
  CHECK(inferred.outputs().tokens() == std::vector<std::string>{"y"});
}

TEST_CASE("dfa and mealy round trips") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Dfa d = random_dfa(1 + seed * 3, letters(1 + seed % 4), 0.3, seed);
    CHECK(parse_dfa(serialize(d)) == d);
    std::vector<Symbol> lambda(d.transitions().size());
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = static_cast<Symbol>((i * seed) % 3);
    MealyMachine m(d.alphabet(), Alphabet({"x", "y", "z"}), d.num_states(), 0, d.transitions(), lambda);
    CHECK(parse_mealy(serialize(m)) == m);
  }
  Dfa add = bitadd_dfa();
  CHECK(parse_dfa(serialize(add)) == add);
}

TEST_CASE("srs text format") {
  Srs r = parse_srs("# idempotent\na a -> a\nb a -> a b\n");
  CHECK(r.alphabet().tokens() == std::vector<std::string>{"a", "b"});
  CHECK(r.size() == 2);
  CHECK(r.rules()[1].rhs == Word{0, 1});
  Srs e = parse_srs("a -> _\n", ab());
  CHECK(e.rules()[0].rhs.empty());
  CHECK_THROWS_AS(parse_srs("_ -> a\n"), parse_error);
  CHECK(parse_srs("_ -> a\n", ab(), true).has_empty_lhs());
  CHECK_THROWS_AS(parse_srs("c -> a\n", ab()), parse_error);

  for (const Srs& s : {r, bitadd_srs(), convolution_srs(letters(2), Alphabet({"c", "d"})),
                       upward_closed_system(ab())})
    CHECK(parse_srs(serialize(s), std::nullopt, s.one_sided()) == s);
}

TEST_CASE("csrs text format") {
  Csrs c = parse_csrs("alphabet: a b\na a -> a | ex = ~ | ey = .*\nb -> _ | ex = a* | ey = !\nb a -> a b\n");
  REQUIRE(c.size() == 3);
  CHECK(c.rules()[0].prefix_ctx == Regex::epsilon());
  CHECK(c.rules()[0].suffix_ctx.is_universal(2));
  CHECK(c.rules()[1].suffix_ctx == Regex::empty_set());
  CHECK(c.rules()[2].prefix_ctx.is_universal(2));
  CHECK(parse_csrs(serialize(c)) == c);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Csrs rb = encode_partial_dfa(prune_transitions(random_dfa(30, letters(3), 0.2, seed), 12, seed));
    CHECK(parse_csrs(serialize(rb)) == rb);
  }
}

TEST_CASE("regex text format") {
  Alphabet sigma = ab();
  Regex e = parse_regex("a (b a)* + ~", sigma);
  for (const auto& w : oracle::words_upto(2, 6)) {
    bool expected = w.empty();
    if (!w.empty() && w[0] == 0 && w.size() % 2 == 1) {
      expected = true;
      for (std::size_t i = 1; i < w.size(); ++i) expected = expected && w[i] == (i % 2 == 1 ? 1u : 0u);
    }
    CHECK(oracle::regex_member(e, w) == expected);
  }
  CHECK(parse_regex(".", sigma) == Regex::any_symbol(sigma));
  CHECK(parse_regex("!", sigma) == Regex::empty_set());
  CHECK(format_regex(Regex::universal(sigma), sigma) == ".*");

  Alphabet tuples = bitadd_alphabet();
  Regex t = parse_regex("(1,0,0)(0,1,0)*", tuples);
  CHECK(oracle::regex_member(t, tuples.parse_word("(1,0,0) (0,1,0) (0,1,0)")));

  SplitMix64 rng(12);
  std::function<Regex(int)> gen = [&](int depth) -> Regex {
    switch (depth <= 0 ? rng.uniform_below(3) : rng.uniform_below(6)) {
      case 0:
        return Regex::symbol(static_cast<Symbol>(rng.uniform_below(2)));
      case 1:
        return Regex::epsilon();
      case 2:
        return Regex::empty_set();
      case 3:
        return Regex::concat(gen(depth - 1), gen(depth - 1));
      case 4:
        return Regex::alt(gen(depth - 1), gen(depth - 1));
      default:
        return Regex::star(gen(depth - 1));
    }
  };
  for (int i = 0; i < 100; ++i) {
    Regex r = gen(4);
    Regex back = parse_regex(format_regex(r, sigma), sigma);
    for (const auto& w : oracle::words_upto(2, 5)) REQUIRE(oracle::regex_member(back, w) == oracle::regex_member(r, w));
  }
}

TEST_CASE("files") {
  std::string path = "io_test_tmp.txt";
  write_text_file(path, "alphabet: a\n");
  CHECK(read_text_file(path) == "alphabet: a\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("/nonexistent/file"), input_error);
}
