#include "advlearn/oracle.hpp"

#include "advlearn/automata.hpp"
#include "advlearn/error.hpp"

namespace advlearn {

bool DfaTeacher::membership(const Word& w) {
  bool answer = target_.accepts(w);
  ++counters_.mq;
  return answer;
}

std::optional<Word> DfaTeacher::equivalence(const Dfa& hypothesis) {
  auto cex = shortest_counterexample(hypothesis, target_);
  ++counters_.eq;
  if (cex && hypothesis.accepts(*cex) == target_.accepts(*cex))
    throw contract_violation("teacher produced a word that is not a counterexample");
  return cex;
}

bool DfaTeacher::verify(const Word& w, bool claimed) {
  ++counters_.verified;
  if (target_.accepts(w) == claimed) return true;
  ++counters_.mismatches;
  mismatched_.push_back(w);
  return false;
}

Symbol MealyTeacher::last_output(const Word& w) {
  Symbol out = advlearn::last_output(target_, w);
  ++counters_.mq;
  return out;
}

std::optional<Word> MealyTeacher::equivalence(const MealyMachine& hypothesis) {
  auto cex = shortest_counterexample(hypothesis, target_);
  ++counters_.eq;
  if (cex && hypothesis.outputs().token(advlearn::last_output(hypothesis, *cex)) ==
                 target_.outputs().token(advlearn::last_output(target_, *cex)))
    throw contract_violation("teacher produced a word that is not a counterexample");
  return cex;
}

bool MealyTeacher::verify(const Word& w, Symbol claimed) {
  ++counters_.verified;
  if (advlearn::last_output(target_, w) == claimed) return true;
  ++counters_.mismatches;
  mismatched_.push_back(w);
  return false;
}

bool MealyTeacher::verify_counterexample(const MealyMachine& hypothesis, const Word& w) {
  ++counters_.verified;
  if (hypothesis.outputs().token(advlearn::last_output(hypothesis, w)) !=
      target_.outputs().token(advlearn::last_output(target_, w)))
    return true;
  ++counters_.mismatches;
  mismatched_.push_back(w);
  return false;
}

}  // namespace advlearn
