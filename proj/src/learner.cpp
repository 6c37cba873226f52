#include "advlearn/learner.hpp"

#include <string>
#include <unordered_map>

#include "advlearn/error.hpp"

namespace advlearn {

std::vector<Word> initial_tests(const Alphabet& alphabet, InitialTests policy) {
  std::vector<Word> tests{Word{}};
  if (policy == InitialTests::epsilon_plus_alphabet)
    for (Symbol a = 0; a < alphabet.size(); ++a) tests.push_back(Word{a});
  return tests;
}

namespace {

template <typename Value>
std::unordered_map<typename ObservationTable<Value>::Row, State, RangeHash> state_ids(
    const ObservationTable<Value>& table, const std::vector<Word>& reps) {
  std::unordered_map<typename ObservationTable<Value>::Row, State, RangeHash> ids;
  for (const auto& s : reps) ids.emplace(table.row(s), static_cast<State>(ids.size()));
  return ids;
}

template <typename Value>
std::vector<State> hypothesis_delta(const ObservationTable<Value>& table, const std::vector<Word>& reps) {
  auto ids = state_ids(table, reps);
  const std::size_t k = table.alphabet().size();
  std::vector<State> delta(reps.size() * k);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (Symbol a = 0; a < k; ++a) {
      Word u = reps[i];
      u.push_back(a);
      auto it = ids.find(table.row(u));
      if (it == ids.end()) throw contract_violation("observation table is not closed");
      delta[i * k + a] = it->second;
    }
  return delta;
}

template <typename Value>
std::size_t stabilize_table(ObservationTable<Value>& table, const LearnerConfig& config) {
  std::size_t changes = 0;
  while (true) {
    changes += table.close();
    if (config.cex_processing != CexProcessing::all_prefixes) break;
    auto c = table.inconsistency();
    if (!c) break;
    table.add_test(std::move(*c));
    ++changes;
  }
  return changes;
}

template <typename Value>
void process(ObservationTable<Value>& table, const Word& cex, const LearnerConfig& config, bool with_empty) {
  if (config.cex_processing == CexProcessing::all_prefixes)
    table.add_selector_prefixes(cex);
  else
    table.add_test_suffixes(cex, with_empty);
}

}  // namespace

Hypothesis build_hypothesis(const ObservationTable<bool>& table) {
  if (table.tests().empty() || !table.tests().front().empty())
    throw contract_violation("the first test must be the empty word");
  auto reps = table.state_selectors();
  auto delta = hypothesis_delta(table, reps);
  std::vector<bool> accepting(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) accepting[i] = table.row(reps[i])[0];
  return Hypothesis{Dfa(table.alphabet(), reps.size(), 0, std::move(accepting), std::move(delta)), reps,
                    table.tests()};
}

MealyHypothesis build_mealy_hypothesis(const ObservationTable<Symbol>& table, const Alphabet& outputs) {
  const std::size_t k = table.alphabet().size();
  std::vector<std::size_t> letter_column(k, table.tests().size());
  for (std::size_t j = 0; j < table.tests().size(); ++j)
    if (table.tests()[j].size() == 1) letter_column[table.tests()[j][0]] = j;
  for (Symbol a = 0; a < k; ++a)
    if (letter_column[a] == table.tests().size()) throw contract_violation("tests must contain every letter");
  auto reps = table.state_selectors();
  auto delta = hypothesis_delta(table, reps);
  std::vector<Symbol> lambda(reps.size() * k);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (Symbol a = 0; a < k; ++a) lambda[i * k + a] = table.row(reps[i])[letter_column[a]];
  return MealyHypothesis{
      MealyMachine(table.alphabet(), outputs, reps.size(), 0, std::move(delta), std::move(lambda)), reps,
      table.tests()};
}

std::size_t stabilize(ObservationTable<bool>& table, const LearnerConfig& config) {
  return stabilize_table(table, config);
}

std::size_t stabilize(ObservationTable<Symbol>& table, const LearnerConfig& config) {
  return stabilize_table(table, config);
}

void process_counterexample(ObservationTable<bool>& table, const Word& cex, const LearnerConfig& config) {
  process(table, cex, config, true);
}

void process_counterexample(ObservationTable<Symbol>& table, const Word& cex, const LearnerConfig& config) {
  process(table, cex, config, false);
}

LearnResult lstar_learn(const Alphabet& alphabet, const MembershipChannel& mq, const EquivalenceChannel& eq,
                        const LearnerConfig& config) {
  if (config.max_rounds == 0) throw input_error("max_rounds must be at least 1");
  ObservationTable<bool> table(alphabet, initial_tests(alphabet, config.initial_tests), mq);
  LearnerCounts counts;
  while (counts.rounds < config.max_rounds) {
    ++counts.rounds;
    stabilize(table, config);
    Hypothesis h = build_hypothesis(table);
    ++counts.eq;
    auto cex = eq(h.dfa);
    if (!cex) {
      counts.mq = table.queries();
      return LearnResult{std::move(h.dfa), counts};
    }
    counts.cex_total_length += cex->size();
    if (table.query(*cex) == h.dfa.accepts(*cex))
      throw divergence_error("counterexample " + alphabet.format(*cex) + " agrees with the hypothesis");
    process_counterexample(table, *cex, config);
  }
  throw divergence_error("no equivalent hypothesis after " + std::to_string(config.max_rounds) + " rounds");
}

MealyLearnResult lstar_mealy(const Alphabet& inputs, const Alphabet& outputs, const OutputChannel& oq,
                             const MealyEquivalenceChannel& eq, const LearnerConfig& config) {
  if (config.max_rounds == 0) throw input_error("max_rounds must be at least 1");
  std::vector<Word> tests;
  for (Symbol a = 0; a < inputs.size(); ++a) tests.push_back(Word{a});
  ObservationTable<Symbol> table(inputs, std::move(tests), [&](const Word& w) -> Symbol {
    if (w.empty()) throw contract_violation("the output channel is undefined on the empty word");
    return oq(w);
  });
  LearnerCounts counts;
  while (counts.rounds < config.max_rounds) {
    ++counts.rounds;
    stabilize(table, config);
    MealyHypothesis h = build_mealy_hypothesis(table, outputs);
    ++counts.eq;
    auto cex = eq(h.machine);
    if (!cex) {
      counts.mq = table.queries();
      return MealyLearnResult{std::move(h.machine), counts};
    }
    if (cex->empty()) throw divergence_error("empty counterexample for a Mealy hypothesis");
    counts.cex_total_length += cex->size();
    if (table.query(*cex) == last_output(h.machine, *cex))
      throw divergence_error("counterexample " + inputs.format(*cex) + " agrees with the hypothesis");
    process_counterexample(table, *cex, config);
  }
  throw divergence_error("no equivalent hypothesis after " + std::to_string(config.max_rounds) + " rounds");
}

}  // namespace advlearn
