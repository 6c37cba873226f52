#include "advlearn/automata.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "advlearn/error.hpp"

namespace advlearn {

namespace {

constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

// Parent links of a BFS over an implicit graph with dense node ids.
struct BfsTree {
  std::vector<std::size_t> parent;
  std::vector<Symbol> via;

  explicit BfsTree(std::size_t nodes) : parent(nodes, kUnvisited), via(nodes, 0) {}

  bool visited(std::size_t node) const { return parent[node] != kUnvisited; }

  Word word_to(std::size_t node) const {
    Word w;
    while (parent[node] != node) {
      w.push_back(via[node]);
      node = parent[node];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
};

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (a != b) throw input_error("alphabet mismatch");
}

Nfa compile_constraint(const Regex& e, const Alphabet& alphabet) {
  return regex_to_nfa(e, alphabet.size()).without_epsilon();
}

}  // namespace

std::vector<State> reachable_states(const Dfa& d) {
  const std::size_t k = d.alphabet().size();
  std::vector<char> seen(d.num_states(), 0);
  std::vector<State> order{d.initial()};
  seen[d.initial()] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol a = 0; a < k; ++a) {
      State t = d.next(order[i], a);
      if (!seen[t]) {
        seen[t] = 1;
        order.push_back(t);
      }
    }
  }
  return order;
}

Dfa canonicalize(const Dfa& d) {
  const std::size_t k = d.alphabet().size();
  auto order = reachable_states(d);
  std::vector<State> renumber(d.num_states(), kNoState);
  for (std::size_t i = 0; i < order.size(); ++i) renumber[order[i]] = static_cast<State>(i);
  std::vector<bool> accepting(order.size());
  std::vector<State> delta(order.size() * k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    accepting[i] = d.is_accepting(order[i]);
    for (Symbol a = 0; a < k; ++a) delta[i * k + a] = renumber[d.next(order[i], a)];
  }
  return Dfa(d.alphabet(), order.size(), 0, std::move(accepting), std::move(delta));
}

namespace {

// Moore refinement; returns every level of the partition (level 0 is
// acceptance). The last level is stable.
std::vector<std::vector<std::size_t>> moore_levels(const Dfa& d, std::size_t& num_classes) {
  const std::size_t n = d.num_states();
  const std::size_t k = d.alphabet().size();
  std::vector<std::vector<std::size_t>> levels;

  std::vector<std::size_t> level0(n);
  bool any_acc = false, any_rej = false;
  for (State q = 0; q < n; ++q) {
    any_acc |= d.is_accepting(q);
    any_rej |= !d.is_accepting(q);
  }
  // Class 0 is the class of state 0 so numbering is stable.
  for (State q = 0; q < n; ++q) level0[q] = d.is_accepting(q) == d.is_accepting(0) ? 0 : 1;
  num_classes = (any_acc && any_rej) ? 2 : 1;
  levels.push_back(std::move(level0));

  std::vector<std::size_t> signature(k + 1);
  while (true) {
    const auto& prev = levels.back();
    std::unordered_map<std::vector<std::size_t>, std::size_t, RangeHash> ids;
    std::vector<std::size_t> next(n);
    for (State q = 0; q < n; ++q) {
      signature[0] = prev[q];
      for (Symbol a = 0; a < k; ++a) signature[a + 1] = prev[d.next(q, a)];
      auto [it, inserted] = ids.emplace(signature, ids.size());
      next[q] = it->second;
    }
    if (ids.size() == num_classes) break;
    num_classes = ids.size();
    levels.push_back(std::move(next));
  }
  return levels;
}

}  // namespace

MooreRefinement::MooreRefinement(const Dfa& d) : dfa_(&d) {
  std::size_t count = 0;
  classes_ = moore_levels(d, count);
  num_classes_ = count;
}

std::optional<Word> MooreRefinement::distinguish(State q1, State q2) const {
  if (equivalent(q1, q2)) return std::nullopt;
  std::size_t level = 0;
  while (classes_[level][q1] == classes_[level][q2]) ++level;
  const std::size_t k = dfa_->alphabet().size();
  Word w;
  while (level > 0) {
    --level;
    Symbol chosen = 0;
    bool found = false;
    for (Symbol a = 0; a < k && !found; ++a) {
      if (classes_[level][dfa_->next(q1, a)] != classes_[level][dfa_->next(q2, a)]) {
        chosen = a;
        found = true;
      }
    }
    if (!found) throw contract_violation("Moore refinement levels are inconsistent");
    w.push_back(chosen);
    q1 = dfa_->next(q1, chosen);
    q2 = dfa_->next(q2, chosen);
  }
  return w;
}

Dfa minimize(const Dfa& d) {
  Dfa reach = canonicalize(d);
  MooreRefinement refinement(reach);
  const std::size_t k = reach.alphabet().size();
  const std::size_t m = refinement.num_classes();
  std::vector<bool> accepting(m);
  std::vector<State> delta(m * k);
  for (State q = 0; q < reach.num_states(); ++q) {
    std::size_t c = refinement.class_of(q);
    accepting[c] = reach.is_accepting(q);
    for (Symbol a = 0; a < k; ++a) delta[c * k + a] = static_cast<State>(refinement.class_of(reach.next(q, a)));
  }
  Dfa quotient(reach.alphabet(), m, static_cast<State>(refinement.class_of(reach.initial())),
               std::move(accepting), std::move(delta));
  return canonicalize(quotient);
}

std::vector<std::optional<Word>> access_words(const Dfa& d) {
  const std::size_t k = d.alphabet().size();
  BfsTree tree(d.num_states());
  tree.parent[d.initial()] = d.initial();
  std::deque<State> queue{d.initial()};
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Symbol a = 0; a < k; ++a) {
      State t = d.next(q, a);
      if (!tree.visited(t)) {
        tree.parent[t] = q;
        tree.via[t] = a;
        queue.push_back(t);
      }
    }
  }
  std::vector<std::optional<Word>> out(d.num_states());
  for (State q = 0; q < d.num_states(); ++q)
    if (tree.visited(q)) out[q] = tree.word_to(q);
  return out;
}

std::optional<Word> shortest_access_word(const Dfa& d, State q) {
  if (q >= d.num_states()) throw input_error("state out of range");
  return access_words(d)[q];
}

std::optional<Word> distinguishing_word(const Dfa& d, State q1, State q2) {
  if (q1 >= d.num_states() || q2 >= d.num_states()) throw input_error("state out of range");
  return MooreRefinement(d).distinguish(q1, q2);
}

namespace {

// BFS over pairs of states of two DFAs over the same alphabet, starting at
// (s1, s2); returns the word to the first pair satisfying `goal`.
template <typename Goal>
std::optional<Word> pair_search(const Dfa& d1, State s1, const Dfa& d2, State s2, Goal goal) {
  const std::size_t k = d1.alphabet().size();
  const std::size_t n2 = d2.num_states();
  BfsTree tree(d1.num_states() * n2);
  std::size_t start = s1 * n2 + s2;
  tree.parent[start] = start;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    State p1 = static_cast<State>(node / n2), p2 = static_cast<State>(node % n2);
    if (goal(p1, p2)) return tree.word_to(node);
    for (Symbol a = 0; a < k; ++a) {
      std::size_t succ = d1.next(p1, a) * n2 + d2.next(p2, a);
      if (!tree.visited(succ)) {
        tree.parent[succ] = node;
        tree.via[succ] = a;
        queue.push_back(succ);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Word> shortest_counterexample(const Dfa& d1, const Dfa& d2) {
  require_same_alphabet(d1.alphabet(), d2.alphabet());
  return pair_search(d1, d1.initial(), d2, d2.initial(),
                     [&](State p1, State p2) { return d1.is_accepting(p1) != d2.is_accepting(p2); });
}

std::vector<std::pair<State, State>> SubsumptionRelation::pairs() const {
  std::vector<std::pair<State, State>> out;
  for (State a = 0; a < n_; ++a)
    for (State b = 0; b < n_; ++b)
      if (holds(a, b)) out.emplace_back(a, b);
  return out;
}

SubsumptionRelation subsumption_relation(const Dfa& d) {
  const std::size_t n = d.num_states();
  const std::size_t k = d.alphabet().size();
  // pred[a][q] = states p with δ(p,a) = q
  std::vector<std::vector<std::vector<State>>> pred(k, std::vector<std::vector<State>>(n));
  for (State p = 0; p < n; ++p)
    for (Symbol a = 0; a < k; ++a) pred[a][d.next(p, a)].push_back(p);

  std::vector<char> holds(n * n, 1);
  std::vector<std::size_t> removed;
  for (State s1 = 0; s1 < n; ++s1)
    for (State s2 = 0; s2 < n; ++s2)
      if (d.is_accepting(s1) && !d.is_accepting(s2)) {
        holds[s1 * n + s2] = 0;
        removed.push_back(s1 * n + s2);
      }
  // A pair leaves the relation once some letter moves it onto a removed pair.
  while (!removed.empty()) {
    std::size_t node = removed.back();
    removed.pop_back();
    State p1 = static_cast<State>(node / n), p2 = static_cast<State>(node % n);
    for (Symbol a = 0; a < k; ++a) {
      for (State r1 : pred[a][p1]) {
        for (State r2 : pred[a][p2]) {
          std::size_t idx = r1 * n + r2;
          if (holds[idx]) {
            holds[idx] = 0;
            removed.push_back(idx);
          }
        }
      }
    }
  }
  return SubsumptionRelation(n, std::move(holds));
}

std::optional<Word> subsumption_witness(const Dfa& d, State s1, State s2) {
  if (s1 >= d.num_states() || s2 >= d.num_states()) throw input_error("state out of range");
  return pair_search(d, s1, d, s2,
                     [&](State p1, State p2) { return d.is_accepting(p1) && !d.is_accepting(p2); });
}

std::vector<std::optional<Word>> access_words_via(const Dfa& d, const Nfa& nfa) {
  if (nfa.has_epsilon_moves()) throw contract_violation("constraint automaton must be epsilon-free");
  const std::size_t m = nfa.num_states();
  BfsTree tree(d.num_states() * m);
  std::deque<std::size_t> queue;
  for (State s : nfa.initial()) {
    std::size_t node = d.initial() * m + s;
    if (!tree.visited(node)) {
      tree.parent[node] = node;
      queue.push_back(node);
    }
  }
  std::vector<std::optional<Word>> out(d.num_states());
  // Edges of an ε-free NFA are sorted by symbol, so visiting them in order
  // keeps the BFS discovery order shortlex.
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    State q = static_cast<State>(node / m), s = static_cast<State>(node % m);
    if (nfa.is_accepting(s) && !out[q]) out[q] = tree.word_to(node);
    for (const auto& e : nfa.edges(s)) {
      std::size_t succ = d.next(q, e.symbol) * m + e.to;
      if (!tree.visited(succ)) {
        tree.parent[succ] = node;
        tree.via[succ] = e.symbol;
        queue.push_back(succ);
      }
    }
  }
  return out;
}

std::vector<State> states_reachable_via(const Dfa& d, const Regex& e) {
  auto words = access_words_via(d, compile_constraint(e, d.alphabet()));
  std::vector<State> out;
  for (State q = 0; q < d.num_states(); ++q)
    if (words[q]) out.push_back(q);
  return out;
}

std::optional<Word> distinguished_within(const Dfa& d, State q1, State q2, const Nfa& nfa) {
  if (nfa.has_epsilon_moves()) throw contract_violation("constraint automaton must be epsilon-free");
  const std::size_t n = d.num_states();
  const std::size_t m = nfa.num_states();
  auto id = [&](State p1, State p2, State s) { return (static_cast<std::size_t>(p1) * n + p2) * m + s; };
  BfsTree tree(n * n * m);
  std::deque<std::size_t> queue;
  for (State s : nfa.initial()) {
    std::size_t node = id(q1, q2, s);
    if (!tree.visited(node)) {
      tree.parent[node] = node;
      queue.push_back(node);
    }
  }
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    State s = static_cast<State>(node % m);
    std::size_t pair = node / m;
    State p1 = static_cast<State>(pair / n), p2 = static_cast<State>(pair % n);
    if (nfa.is_accepting(s) && d.is_accepting(p1) != d.is_accepting(p2)) return tree.word_to(node);
    for (const auto& e : nfa.edges(s)) {
      std::size_t succ = id(d.next(p1, e.symbol), d.next(p2, e.symbol), e.to);
      if (!tree.visited(succ)) {
        tree.parent[succ] = node;
        tree.via[succ] = e.symbol;
        queue.push_back(succ);
      }
    }
  }
  return std::nullopt;
}

std::optional<Word> distinguished_within(const Dfa& d, State q1, State q2, const Regex& e) {
  return distinguished_within(d, q1, q2, compile_constraint(e, d.alphabet()));
}

std::vector<char> pairs_distinguished_within(const Dfa& d, const Nfa& nfa) {
  if (nfa.has_epsilon_moves()) throw contract_violation("constraint automaton must be epsilon-free");
  const std::size_t n = d.num_states();
  const std::size_t k = d.alphabet().size();
  const std::size_t m = nfa.num_states();
  std::vector<std::vector<std::vector<State>>> pred(k, std::vector<std::vector<State>>(n));
  for (State p = 0; p < n; ++p)
    for (Symbol a = 0; a < k; ++a) pred[a][d.next(p, a)].push_back(p);
  // Reverse NFA edges: (symbol, source) per target.
  std::vector<std::vector<Nfa::Edge>> nfa_pred(m);
  for (State s = 0; s < m; ++s)
    for (const auto& e : nfa.edges(s)) nfa_pred[e.to].push_back(Nfa::Edge{e.symbol, s});

  auto id = [&](State p1, State p2, State s) { return (static_cast<std::size_t>(p1) * n + p2) * m + s; };
  std::vector<char> marked(n * n * m, 0);
  std::vector<std::size_t> stack;
  for (State p1 = 0; p1 < n; ++p1)
    for (State p2 = 0; p2 < n; ++p2) {
      if (d.is_accepting(p1) == d.is_accepting(p2)) continue;
      for (State s = 0; s < m; ++s)
        if (nfa.is_accepting(s)) {
          marked[id(p1, p2, s)] = 1;
          stack.push_back(id(p1, p2, s));
        }
    }
  while (!stack.empty()) {
    std::size_t node = stack.back();
    stack.pop_back();
    State s = static_cast<State>(node % m);
    std::size_t pair = node / m;
    State p1 = static_cast<State>(pair / n), p2 = static_cast<State>(pair % n);
    for (const auto& back : nfa_pred[s]) {
      for (State r1 : pred[back.symbol][p1])
        for (State r2 : pred[back.symbol][p2]) {
          std::size_t prev = id(r1, r2, back.to);
          if (!marked[prev]) {
            marked[prev] = 1;
            stack.push_back(prev);
          }
        }
    }
  }
  std::vector<char> out(n * n, 0);
  for (State p1 = 0; p1 < n; ++p1)
    for (State p2 = 0; p2 < n; ++p2)
      for (State s : nfa.initial())
        if (marked[id(p1, p2, s)]) out[p1 * n + p2] = 1;
  return out;
}

}  // namespace advlearn
