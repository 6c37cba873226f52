#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "advlearn/controlled.hpp"
#include "advlearn/dfa.hpp"
#include "advlearn/learner.hpp"
#include "advlearn/mealy.hpp"
#include "advlearn/oracle.hpp"
#include "advlearn/rewriting.hpp"

namespace advlearn {

struct NoAdvice {};
struct TwoSidedAdvice {
  Srs srs;
};
struct ControlledAdvice {
  Csrs csrs;
};
struct PositiveAdvice {
  Srs srs;
};
struct NegativeAdvice {
  Srs srs;
};
/// The implicit system R↑ = {ε → a | a ∈ Σ}, positively consistent with
/// upward-closed languages.
struct UpwardClosedAdvice {};

using AdviceMode =
    std::variant<NoAdvice, TwoSidedAdvice, ControlledAdvice, PositiveAdvice, NegativeAdvice, UpwardClosedAdvice>;

/// "none", "two-sided", "csrs", "positive", "negative" or "upward".
std::string mode_name(const AdviceMode& mode);

/// x = u·l·v and y = u·r·v for rule `rule` applied at `position` = |u|.
struct Witness {
  Word x;
  Word y;
  std::size_t rule = 0;
  std::size_t position = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Consistent when `witness` is empty.
struct ConsistencyVerdict {
  std::optional<Witness> witness;

  bool consistent() const noexcept { return !witness.has_value(); }
};

enum class Polarity { positive, negative };

/// For every rule l → r and state q, δ(q,l) and δ(q,r) must be
/// equivalent. Scans rules in list order, then states in id order.
ConsistencyVerdict check_consistency(const Srs& r, const Dfa& d);

/// Controlled variant: only states reachable by a prefix-context word, and
/// only suffixes from the suffix context, matter.
ConsistencyVerdict check_consistency_csrs(const Csrs& c, const Dfa& d);

/// Positive: δ(q,l) ≤ δ(q,r) in the subsumption preorder; negative: the
/// reverse.
ConsistencyVerdict check_consistency_one_sided(const Srs& r, const Dfa& d, Polarity polarity);

/// Rules must have non-empty sides (advice_error otherwise). Checks equal
/// last outputs along l and r and equivalent targets.
ConsistencyVerdict check_consistency_mealy(const Srs& r, const MealyMachine& m);

/// R↑ over an alphabet (one-sided system).
Srs upward_closed_system(const Alphabet& alphabet);

/// Dispatches on the mode against minimize(d). NoAdvice is always consistent.
ConsistencyVerdict check_advice(const AdviceMode& mode, const Dfa& d);

/// Answers stored per normal form.
template <typename Value>
class NormalFormCache {
 public:
  std::optional<Value> find(const Word& normal_form) {
    auto it = map_.find(normal_form);
    if (it == map_.end()) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return it->second;
  }
  /// Keeps the first answer stored for a normal form.
  void store(const Word& normal_form, Value v) { map_.emplace(normal_form, v); }

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }
  bool contains(const Word& normal_form) const { return map_.count(normal_form) != 0; }

 private:
  absl::flat_hash_map<Word, Value, WordHash> map_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// True iff `small` is a (scattered) subsequence of `big`.
bool is_subsequence(const Word& small, const Word& big);

/// Known members and non-members of an upward-closed language.
class SignedCache {
 public:
  const std::vector<Word>& positives() const noexcept { return positives_; }
  const std::vector<Word>& negatives() const noexcept { return negatives_; }

  /// Throws contract_violation if the word is already recorded with the
  /// opposite sign.
  void record(const Word& w, bool member);

 private:
  std::vector<Word> positives_;
  std::vector<Word> negatives_;
};

/// true if a positive word is a subsequence of w; false if w is a
/// subsequence of a negative word; nullopt otherwise.
std::optional<bool> upward_closed_infer(const SignedCache& s, const Word& w);

struct AdviceOptions {
  /// Cross-check every inferred answer with the teacher (uncounted).
  bool shadow = false;
  /// Use the membership cache even without a convergence proof.
  bool assume_convergent = false;
  /// Normal-form caching for two-sided and controlled modes. Off means the
  /// advice only serves equivalence queries.
  bool infer_membership = true;
  std::optional<std::size_t> step_budget;
};

/// Sits between the learner and a DFA teacher and answers what it can.
class AdviceLayer {
 public:
  /// Throws advice_error when membership inference is requested for a system
  /// whose convergence is not proved (and not assumed).
  AdviceLayer(AdviceMode mode, DfaTeacher& teacher, AdviceOptions options = {});

  bool membership(const Word& w);
  /// nullopt means the hypothesis is equivalent.
  std::optional<Word> equivalence(const Dfa& hypothesis);

  /// Cache key of w: its normal form in two-sided modes, w itself otherwise.
  Word cache_key(const Word& w) const;

  const AdviceMode& mode() const noexcept { return mode_; }
  const QueryStats& stats() const noexcept { return stats_; }
  const NormalFormCache<bool>& cache() const noexcept { return cache_; }
  const SignedCache& signed_cache() const noexcept { return signed_; }
  /// The most recent witness used to answer an equivalence query.
  const std::optional<Witness>& last_witness() const noexcept { return last_witness_; }
  /// Inferred answers (membership or equivalence) that the teacher refuted.
  std::size_t shadow_mismatches() const noexcept { return shadow_mismatches_; }

  MembershipChannel membership_channel() {
    return [this](const Word& w) { return membership(w); };
  }
  EquivalenceChannel equivalence_channel() {
    return [this](const Dfa& h) { return equivalence(h); };
  }

 private:
  bool lookup(const Word& w);
  ConsistencyVerdict check(const Dfa& hypothesis) const;

  AdviceMode mode_;
  DfaTeacher* teacher_;
  AdviceOptions options_;
  bool infer_ = false;
  std::optional<Srs> up_;
  QueryStats stats_;
  NormalFormCache<bool> cache_;
  SignedCache signed_;
  std::optional<Witness> last_witness_;
  std::size_t shadow_mismatches_ = 0;
};

/// Mealy counterpart; supports NoAdvice and TwoSidedAdvice.
class MealyAdviceLayer {
 public:
  MealyAdviceLayer(AdviceMode mode, MealyTeacher& teacher, AdviceOptions options = {});

  Symbol output(const Word& w);
  std::optional<Word> equivalence(const MealyMachine& hypothesis);
  Word cache_key(const Word& w) const;

  const QueryStats& stats() const noexcept { return stats_; }
  const NormalFormCache<Symbol>& cache() const noexcept { return cache_; }
  const std::optional<Witness>& last_witness() const noexcept { return last_witness_; }
  std::size_t shadow_mismatches() const noexcept { return shadow_mismatches_; }

  OutputChannel output_channel() {
    return [this](const Word& w) { return output(w); };
  }
  MealyEquivalenceChannel equivalence_channel() {
    return [this](const MealyMachine& h) { return equivalence(h); };
  }

 private:
  Symbol lookup(const Word& w);

  AdviceMode mode_;
  MealyTeacher* teacher_;
  AdviceOptions options_;
  bool infer_ = false;
  QueryStats stats_;
  NormalFormCache<Symbol> cache_;
  std::optional<Witness> last_witness_;
  std::size_t shadow_mismatches_ = 0;
};

/// One complete learning run against a simulated teacher.
struct RunOutcome {
  Dfa dfa;
  QueryStats stats;
  LearnerCounts counts;
  std::size_t shadow_mismatches = 0;
  std::size_t teacher_mq = 0;
  std::size_t teacher_eq = 0;
};

RunOutcome learn_with_advice(const Dfa& target, const AdviceMode& mode, const LearnerConfig& config = {},
                             const AdviceOptions& options = {});

struct MealyRunOutcome {
  MealyMachine machine;
  QueryStats stats;
  LearnerCounts counts;
  std::size_t shadow_mismatches = 0;
};

MealyRunOutcome learn_mealy_with_advice(const MealyMachine& target, const AdviceMode& mode,
                                        const LearnerConfig& config = {}, const AdviceOptions& options = {});

}  // namespace advlearn
