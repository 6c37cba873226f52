#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "advlearn/dfa.hpp"
#include "advlearn/learner.hpp"
#include "advlearn/mealy.hpp"

namespace advlearn {

/// Counters of a simulated teacher. Verifications are not queries.
struct TeacherCounters {
  std::size_t mq = 0;
  std::size_t eq = 0;
  std::size_t verified = 0;
  std::size_t mismatches = 0;
};

/// Teacher backed by a reference DFA; answers with shortest counterexamples.
class DfaTeacher {
 public:
  explicit DfaTeacher(Dfa target, bool shadow = false) : target_(std::move(target)), shadow_(shadow) {}

  const Dfa& target() const noexcept { return target_; }
  bool shadow() const noexcept { return shadow_; }
  const TeacherCounters& counters() const noexcept { return counters_; }
  /// Words whose claimed answer disagreed with the target (shadow mode).
  const std::vector<Word>& mismatched_words() const noexcept { return mismatched_; }

  bool membership(const Word& w);
  /// nullopt means YES. The returned word is re-checked to disagree.
  std::optional<Word> equivalence(const Dfa& hypothesis);

  /// Compares a claimed answer with the target without counting a query.
  /// Returns true when the claim is correct.
  bool verify(const Word& w, bool claimed);

  MembershipChannel membership_channel() {
    return [this](const Word& w) { return membership(w); };
  }
  EquivalenceChannel equivalence_channel() {
    return [this](const Dfa& h) { return equivalence(h); };
  }

 private:
  Dfa target_;
  bool shadow_;
  TeacherCounters counters_;
  std::vector<Word> mismatched_;
};

/// Teacher backed by a reference Mealy machine; queries return P^f(w).
class MealyTeacher {
 public:
  explicit MealyTeacher(MealyMachine target, bool shadow = false)
      : target_(std::move(target)), shadow_(shadow) {}

  const MealyMachine& target() const noexcept { return target_; }
  bool shadow() const noexcept { return shadow_; }
  const TeacherCounters& counters() const noexcept { return counters_; }
  const std::vector<Word>& mismatched_words() const noexcept { return mismatched_; }

  /// Counted as a membership query. Throws input_error on ε.
  Symbol last_output(const Word& w);
  std::optional<Word> equivalence(const MealyMachine& hypothesis);
  bool verify(const Word& w, Symbol claimed);
  /// Uncounted check that `w` separates `hypothesis` from the target.
  bool verify_counterexample(const MealyMachine& hypothesis, const Word& w);

  OutputChannel output_channel() {
    return [this](const Word& w) { return last_output(w); };
  }
  MealyEquivalenceChannel equivalence_channel() {
    return [this](const MealyMachine& h) { return equivalence(h); };
  }

 private:
  MealyMachine target_;
  bool shadow_;
  TeacherCounters counters_;
  std::vector<Word> mismatched_;
};

}  // namespace advlearn
