#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "advlearn/dfa.hpp"
#include "advlearn/mealy.hpp"
#include "advlearn/observation_table.hpp"

namespace advlearn {

enum class InitialTests { epsilon_only, epsilon_plus_alphabet };
enum class CexProcessing { all_prefixes, all_suffixes };

struct LearnerConfig {
  InitialTests initial_tests = InitialTests::epsilon_plus_alphabet;
  CexProcessing cex_processing = CexProcessing::all_prefixes;
  std::size_t max_rounds = 10000;
};

/// Query counters. `mq_witness` counts the membership queries an advice
/// layer spends on consistency witnesses during equivalence queries; they
/// are asked on behalf of the EQ path, not demanded by the table.
struct QueryStats {
  std::size_t mq_asked = 0;
  std::size_t mq_inferred = 0;
  std::size_t eq_asked = 0;
  std::size_t eq_inferred = 0;
  std::size_t cex_total_length = 0;
  std::size_t mq_witness = 0;

  std::size_t mq_total() const noexcept { return mq_asked + mq_inferred; }
  std::size_t eq_total() const noexcept { return eq_asked + eq_inferred; }

  friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

using MembershipChannel = std::function<bool(const Word&)>;
using EquivalenceChannel = std::function<std::optional<Word>(const Dfa&)>;
using OutputChannel = std::function<Symbol(const Word&)>;
using MealyEquivalenceChannel = std::function<std::optional<Word>(const MealyMachine&)>;

/// A hypothesis with its back-maps: state i is represented by selector
/// `state_words[i]`; `tests` is the column set C used to split states.
struct Hypothesis {
  Dfa dfa;
  std::vector<Word> state_words;
  std::vector<Word> tests;
};

struct MealyHypothesis {
  MealyMachine machine;
  std::vector<Word> state_words;
  std::vector<Word> tests;
};

/// Demands made by the learner itself (after its own memoization).
struct LearnerCounts {
  std::size_t mq = 0;
  std::size_t eq = 0;
  std::size_t cex_total_length = 0;
  std::size_t rounds = 0;
};

struct LearnResult {
  Dfa dfa;
  LearnerCounts counts;
};

struct MealyLearnResult {
  MealyMachine machine;
  LearnerCounts counts;
};

std::vector<Word> initial_tests(const Alphabet& alphabet, InitialTests policy);

/// Requires a closed table; one state per distinct selector row.
/// Throws contract_violation otherwise.
Hypothesis build_hypothesis(const ObservationTable<bool>& table);

/// Tests must contain every single letter.
MealyHypothesis build_mealy_hypothesis(const ObservationTable<Symbol>& table, const Alphabet& outputs);

/// Closes the table; under all_prefixes also repairs consistency. Returns
/// the number of selectors promoted plus tests added.
std::size_t stabilize(ObservationTable<bool>& table, const LearnerConfig& config);
std::size_t stabilize(ObservationTable<Symbol>& table, const LearnerConfig& config);

void process_counterexample(ObservationTable<bool>& table, const Word& cex, const LearnerConfig& config);
void process_counterexample(ObservationTable<Symbol>& table, const Word& cex, const LearnerConfig& config);

/// L* for DFAs. Throws divergence_error when the round limit is hit or a
/// counterexample agrees with the hypothesis.
LearnResult lstar_learn(const Alphabet& alphabet, const MembershipChannel& mq, const EquivalenceChannel& eq,
                        const LearnerConfig& config = {});

/// L* for Mealy machines over the last-output function.
MealyLearnResult lstar_mealy(const Alphabet& inputs, const Alphabet& outputs, const OutputChannel& oq,
                             const MealyEquivalenceChannel& eq, const LearnerConfig& config = {});

}  // namespace advlearn
