#include "advlearn/mealy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "advlearn/error.hpp"

namespace advlearn {

MealyMachine::MealyMachine(Alphabet inputs, Alphabet outputs, std::size_t num_states, State initial,
                           std::vector<State> delta, std::vector<Symbol> lambda)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      num_states_(num_states),
      initial_(initial),
      delta_(std::move(delta)),
      lambda_(std::move(lambda)) {
  if (num_states_ == 0) throw input_error("machine needs at least one state");
  if (initial_ >= num_states_) throw input_error("initial state out of range");
  const std::size_t cells = num_states_ * inputs_.size();
  if (delta_.size() != cells || lambda_.size() != cells) throw input_error("transition table size mismatch");
  for (State t : delta_)
    if (t >= num_states_) throw input_error("transition target out of range: " + std::to_string(t));
  for (Symbol o : lambda_)
    if (o >= outputs_.size()) throw input_error("output symbol out of range");
}

State MealyMachine::run_from(State q, const Word& w) const {
  if (q >= num_states_) throw input_error("state out of range");
  inputs_.check(w);
  for (Symbol a : w) q = next(q, a);
  return q;
}

Word MealyMachine::transduce(const Word& w) const {
  inputs_.check(w);
  Word out;
  out.reserve(w.size());
  State q = initial_;
  for (Symbol a : w) {
    out.push_back(output(q, a));
    q = next(q, a);
  }
  return out;
}

Symbol last_output_from(const MealyMachine& m, State q, const Word& w) {
  if (w.empty()) throw input_error("last output is undefined on the empty word");
  m.inputs().check(w);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) q = m.next(q, w[i]);
  return m.output(q, w.back());
}

Symbol last_output(const MealyMachine& m, const Word& w) { return last_output_from(m, m.initial(), w); }

namespace {

std::vector<State> reachable_order(const MealyMachine& m) {
  const std::size_t k = m.inputs().size();
  std::vector<char> seen(m.num_states(), 0);
  std::vector<State> order{m.initial()};
  seen[m.initial()] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Symbol a = 0; a < k; ++a) {
      State t = m.next(order[i], a);
      if (!seen[t]) {
        seen[t] = 1;
        order.push_back(t);
      }
    }
  return order;
}

MealyMachine canonicalize(const MealyMachine& m) {
  const std::size_t k = m.inputs().size();
  auto order = reachable_order(m);
  std::vector<State> renumber(m.num_states(), kNoState);
  for (std::size_t i = 0; i < order.size(); ++i) renumber[order[i]] = static_cast<State>(i);
  std::vector<State> delta(order.size() * k);
  std::vector<Symbol> lambda(order.size() * k);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Symbol a = 0; a < k; ++a) {
      delta[i * k + a] = renumber[m.next(order[i], a)];
      lambda[i * k + a] = m.output(order[i], a);
    }
  return MealyMachine(m.inputs(), m.outputs(), order.size(), 0, std::move(delta), std::move(lambda));
}

// Pair BFS from (s1, s2); a pair is a goal when some letter yields different
// outputs. Returns the path plus that letter.
std::optional<Word> first_output_difference(const MealyMachine& m1, State s1, const MealyMachine& m2, State s2) {
  const std::size_t k = m1.inputs().size();
  const std::size_t n2 = m2.num_states();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(m1.num_states() * n2, none);
  std::vector<Symbol> via(parent.size(), 0);
  std::size_t start = s1 * n2 + s2;
  parent[start] = start;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    State p1 = static_cast<State>(node / n2), p2 = static_cast<State>(node % n2);
    for (Symbol a = 0; a < k; ++a) {
      if (m1.outputs().token(m1.output(p1, a)) != m2.outputs().token(m2.output(p2, a))) {
        Word w{a};
        for (std::size_t cur = node; parent[cur] != cur; cur = parent[cur]) w.push_back(via[cur]);
        std::reverse(w.begin(), w.end());
        return w;
      }
    }
    for (Symbol a = 0; a < k; ++a) {
      std::size_t succ = m1.next(p1, a) * n2 + m2.next(p2, a);
      if (parent[succ] == none) {
        parent[succ] = node;
        via[succ] = a;
        queue.push_back(succ);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

MealyMachine minimize(const MealyMachine& m) {
  MealyMachine reach = canonicalize(m);
  const std::size_t n = reach.num_states();
  const std::size_t k = reach.inputs().size();
  // Level 0 groups states by their output row.
  std::vector<std::size_t> cls(n);
  std::size_t count = 0;
  {
    std::map<std::vector<Symbol>, std::size_t> ids;
    for (State q = 0; q < n; ++q) {
      std::vector<Symbol> row(k);
      for (Symbol a = 0; a < k; ++a) row[a] = reach.output(q, a);
      cls[q] = ids.emplace(std::move(row), ids.size()).first->second;
    }
    count = ids.size();
  }
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (State q = 0; q < n; ++q) {
      std::vector<std::size_t> sig{cls[q]};
      for (Symbol a = 0; a < k; ++a) sig.push_back(cls[reach.next(q, a)]);
      next[q] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    cls = std::move(next);
    if (ids.size() == count) break;
    count = ids.size();
  }
  std::vector<State> delta(count * k);
  std::vector<Symbol> lambda(count * k);
  for (State q = 0; q < n; ++q)
    for (Symbol a = 0; a < k; ++a) {
      delta[cls[q] * k + a] = static_cast<State>(cls[reach.next(q, a)]);
      lambda[cls[q] * k + a] = reach.output(q, a);
    }
  MealyMachine quotient(reach.inputs(), reach.outputs(), count, static_cast<State>(cls[reach.initial()]),
                        std::move(delta), std::move(lambda));
  return canonicalize(quotient);
}

std::optional<Word> distinguishing_word(const MealyMachine& m, State q1, State q2) {
  if (q1 >= m.num_states() || q2 >= m.num_states()) throw input_error("state out of range");
  return first_output_difference(m, q1, m, q2);
}

std::optional<Word> shortest_counterexample(const MealyMachine& m1, const MealyMachine& m2) {
  if (m1.inputs() != m2.inputs()) throw input_error("input alphabet mismatch");
  return first_output_difference(m1, m1.initial(), m2, m2.initial());
}

}  // namespace advlearn
