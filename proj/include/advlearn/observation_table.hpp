#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "advlearn/alphabet.hpp"
#include "advlearn/error.hpp"

namespace advlearn {

/// L* observation table. Entries are Value(u·c) for rows u ∈ S ∪ S·Σ and
/// tests c ∈ C. Every word is sent to the oracle at most once.
template <typename Value>
class ObservationTable {
 public:
  using Row = std::vector<Value>;
  using Oracle = std::function<Value(const Word&)>;

  ObservationTable(Alphabet alphabet, std::vector<Word> tests, Oracle oracle)
      : alphabet_(std::move(alphabet)), oracle_(std::move(oracle)) {
    for (auto& c : tests) add_test(std::move(c));
    add_selector(Word{});
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Word>& selectors() const noexcept { return selectors_; }
  const std::vector<Word>& tests() const noexcept { return tests_; }
  bool is_selector(const Word& u) const { return selector_set_.count(u) != 0; }
  bool is_test(const Word& c) const { return test_set_.count(c) != 0; }

  /// Words s·a (s ∈ S, a ∈ Σ) not in S, in shortlex order.
  std::vector<Word> boundary() const {
    std::vector<Word> out;
    for (const auto& s : selectors_)
      for (Symbol a = 0; a < alphabet_.size(); ++a) {
        Word u = s;
        u.push_back(a);
        if (!is_selector(u)) out.push_back(std::move(u));
      }
    std::sort(out.begin(), out.end(), shortlex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const Row& row(const Word& u) const {
    auto it = rows_.find(u);
    if (it == rows_.end()) throw contract_violation("word is not a row of the observation table");
    return it->second;
  }

  /// Number of distinct words sent to the oracle so far.
  std::size_t queries() const noexcept { return memo_.size(); }

  /// Memoized oracle access (also used for counterexample checks).
  Value query(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    Value v = oracle_(w);
    memo_.emplace(w, v);
    return v;
  }

  /// First boundary word (shortlex) whose row matches no selector row.
  std::optional<Word> unclosed_word() const {
    auto reps = representatives();
    for (const auto& u : boundary())
      if (!reps.count(row(u))) return u;
    return std::nullopt;
  }

  bool is_closed() const { return !unclosed_word(); }

  /// Promotes unmatched boundary words, shortest then least first, until
  /// closed. Returns the number of promotions.
  std::size_t close() {
    auto reps = representatives();
    auto greater = [](const Word& a, const Word& b) { return shortlex_less(b, a); };
    std::priority_queue<Word, std::vector<Word>, decltype(greater)> pending(greater);
    for (auto& u : boundary())
      if (!reps.count(row(u))) pending.push(std::move(u));
    std::size_t promoted = 0;
    while (!pending.empty()) {
      Word u = pending.top();
      pending.pop();
      if (is_selector(u) || reps.count(row(u))) continue;
      reps.emplace(row(u), u);
      add_selector(u);
      ++promoted;
      for (Symbol a = 0; a < alphabet_.size(); ++a) {
        Word v = u;
        v.push_back(a);
        if (!is_selector(v) && !reps.count(row(v))) pending.push(std::move(v));
      }
    }
    return promoted;
  }

  /// A test a·c separating two selectors with equal rows, if any.
  std::optional<Word> inconsistency() const {
    std::unordered_map<Row, const Word*, RangeHash> first;
    for (const auto& s : selectors_) {
      auto [it, inserted] = first.emplace(row(s), &s);
      if (inserted) continue;
      const Word& t = *it->second;
      for (Symbol a = 0; a < alphabet_.size(); ++a) {
        const Row& rs = row(extend(s, a));
        const Row& rt = row(extend(t, a));
        for (std::size_t j = 0; j < tests_.size(); ++j)
          if (rs[j] != rt[j]) {
            Word c{a};
            c.insert(c.end(), tests_[j].begin(), tests_[j].end());
            return c;
          }
      }
    }
    return std::nullopt;
  }

  /// Adds every prefix of `w` to S (keeps S prefix-closed).
  void add_selector_prefixes(const Word& w) {
    for (std::size_t len = 0; len <= w.size(); ++len) {
      Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
      if (!is_selector(u)) add_selector(u);
    }
  }

  /// Adds every suffix of `w` to C; the empty suffix only if `with_empty`.
  void add_test_suffixes(const Word& w, bool with_empty) {
    for (std::size_t start = w.size() + 1; start-- > 0;) {
      if (start == w.size() && !with_empty) continue;
      Word c(w.begin() + static_cast<std::ptrdiff_t>(start), w.end());
      if (!is_test(c)) add_test(std::move(c));
    }
  }

  void add_test(Word c) {
    if (is_test(c)) return;
    test_set_.insert(c);
    tests_.push_back(std::move(c));
    for (const auto& u : row_order_) rows_[u].push_back(query(concat(u, tests_.back())));
  }

  /// Distinct selector rows in order of first appearance.
  std::vector<Word> state_selectors() const {
    std::unordered_set<Row, RangeHash> seen;
    std::vector<Word> out;
    for (const auto& s : selectors_)
      if (seen.insert(row(s)).second) out.push_back(s);
    return out;
  }

 private:
  static Word extend(const Word& u, Symbol a) {
    Word v = u;
    v.push_back(a);
    return v;
  }

  std::unordered_map<Row, Word, RangeHash> representatives() const {
    std::unordered_map<Row, Word, RangeHash> reps;
    for (const auto& s : selectors_) reps.emplace(row(s), s);
    return reps;
  }

  void ensure_row(const Word& u) {
    if (rows_.count(u)) return;
    Row r;
    r.reserve(tests_.size());
    for (const auto& c : tests_) r.push_back(query(concat(u, c)));
    rows_.emplace(u, std::move(r));
    row_order_.push_back(u);
  }

  void add_selector(const Word& u) {
    selector_set_.insert(u);
    selectors_.push_back(u);
    ensure_row(u);
    for (Symbol a = 0; a < alphabet_.size(); ++a) ensure_row(extend(u, a));
  }

  Alphabet alphabet_;
  Oracle oracle_;
  std::vector<Word> selectors_;
  std::unordered_set<Word, WordHash> selector_set_;
  std::vector<Word> tests_;
  std::unordered_set<Word, WordHash> test_set_;
  std::unordered_map<Word, Row, WordHash> rows_;
  std::vector<Word> row_order_;
  absl::flat_hash_map<Word, Value, WordHash> memo_;
};

}  // namespace advlearn
