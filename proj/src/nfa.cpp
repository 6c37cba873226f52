#include "advlearn/nfa.hpp"

#include <algorithm>
#include <utility>

#include "advlearn/error.hpp"

namespace advlearn {

State Nfa::add_state() {
  edges_.emplace_back();
  accepting_.push_back(0);
  return static_cast<State>(edges_.size() - 1);
}

void Nfa::add_edge(State from, Symbol symbol, State to) {
  if (from >= num_states() || to >= num_states()) throw input_error("NFA state out of range");
  if (symbol != kEpsilon && symbol >= alphabet_size_) throw input_error("NFA symbol out of range");
  edges_[from].push_back(Edge{symbol, to});
}

void Nfa::add_initial(State q) {
  if (q >= num_states()) throw input_error("NFA state out of range");
  if (std::find(initial_.begin(), initial_.end(), q) == initial_.end()) initial_.push_back(q);
}

void Nfa::set_accepting(State q, bool value) {
  if (q >= num_states()) throw input_error("NFA state out of range");
  accepting_[q] = value ? 1 : 0;
}

bool Nfa::has_epsilon_moves() const {
  for (const auto& out : edges_)
    for (const Edge& e : out)
      if (e.symbol == kEpsilon) return true;
  return false;
}

void Nfa::close(std::vector<char>& set) const {
  std::vector<State> stack;
  for (State q = 0; q < set.size(); ++q)
    if (set[q]) stack.push_back(q);
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (const Edge& e : edges_[q]) {
      if (e.symbol == kEpsilon && !set[e.to]) {
        set[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }
}

std::vector<char> Nfa::initial_set() const {
  std::vector<char> set(num_states(), 0);
  for (State q : initial_) set[q] = 1;
  close(set);
  return set;
}

std::vector<char> Nfa::step(const std::vector<char>& set, Symbol a) const {
  std::vector<char> next(num_states(), 0);
  for (State q = 0; q < set.size(); ++q) {
    if (!set[q]) continue;
    for (const Edge& e : edges_[q])
      if (e.symbol == a) next[e.to] = 1;
  }
  close(next);
  return next;
}

bool Nfa::accepts_any(const std::vector<char>& set) const {
  for (State q = 0; q < set.size(); ++q)
    if (set[q] && accepting_[q]) return true;
  return false;
}

bool Nfa::accepts(const Word& w) const {
  auto set = initial_set();
  for (Symbol a : w) {
    if (a >= alphabet_size_) throw input_error("symbol out of range");
    set = step(set, a);
  }
  return accepts_any(set);
}

Nfa Nfa::without_epsilon() const {
  Nfa out(alphabet_size_);
  for (State q = 0; q < num_states(); ++q) out.add_state();
  for (State q : initial_) out.add_initial(q);
  for (State q = 0; q < num_states(); ++q) {
    std::vector<char> closure(num_states(), 0);
    closure[q] = 1;
    close(closure);
    std::vector<std::pair<Symbol, State>> moves;
    for (State p = 0; p < num_states(); ++p) {
      if (!closure[p]) continue;
      if (accepting_[p]) out.accepting_[q] = 1;
      for (const Edge& e : edges_[p])
        if (e.symbol != kEpsilon) moves.emplace_back(e.symbol, e.to);
    }
    std::sort(moves.begin(), moves.end());
    moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
    for (auto [a, t] : moves) out.edges_[q].push_back(Edge{a, t});
  }
  return out;
}

Nfa Nfa::reversed() const {
  Nfa out(alphabet_size_);
  for (State q = 0; q < num_states(); ++q) out.add_state();
  for (State q = 0; q < num_states(); ++q)
    for (const Edge& e : edges_[q]) out.edges_[e.to].push_back(Edge{e.symbol, q});
  for (State q = 0; q < num_states(); ++q)
    if (accepting_[q]) out.add_initial(q);
  for (State q : initial_) out.accepting_[q] = 1;
  return out;
}

namespace {

struct Fragment {
  State start;
  State end;
};

Fragment build(const Regex& e, Nfa& nfa) {
  State s = nfa.add_state();
  State t = nfa.add_state();
  switch (e.kind()) {
    case Regex::Kind::empty_set:
      break;
    case Regex::Kind::epsilon:
      nfa.add_edge(s, Nfa::kEpsilon, t);
      break;
    case Regex::Kind::symbol:
      nfa.add_edge(s, e.symbol(), t);
      break;
    case Regex::Kind::concat: {
      Fragment a = build(e.left(), nfa);
      Fragment b = build(e.right(), nfa);
      nfa.add_edge(s, Nfa::kEpsilon, a.start);
      nfa.add_edge(a.end, Nfa::kEpsilon, b.start);
      nfa.add_edge(b.end, Nfa::kEpsilon, t);
      break;
    }
    case Regex::Kind::alt: {
      Fragment a = build(e.left(), nfa);
      Fragment b = build(e.right(), nfa);
      nfa.add_edge(s, Nfa::kEpsilon, a.start);
      nfa.add_edge(s, Nfa::kEpsilon, b.start);
      nfa.add_edge(a.end, Nfa::kEpsilon, t);
      nfa.add_edge(b.end, Nfa::kEpsilon, t);
      break;
    }
    case Regex::Kind::star: {
      Fragment a = build(e.inner(), nfa);
      nfa.add_edge(s, Nfa::kEpsilon, a.start);
      nfa.add_edge(s, Nfa::kEpsilon, t);
      nfa.add_edge(a.end, Nfa::kEpsilon, a.start);
      nfa.add_edge(a.end, Nfa::kEpsilon, t);
      break;
    }
  }
  return {s, t};
}

}  // namespace

Nfa regex_to_nfa(const Regex& e, std::size_t alphabet_size) {
  if (e.symbol_bound() > alphabet_size) throw input_error("regex uses a symbol outside the alphabet");
  Nfa nfa(alphabet_size);
  Fragment f = build(e, nfa);
  nfa.add_initial(f.start);
  nfa.set_accepting(f.end);
  return nfa;
}

}  // namespace advlearn
