#include "advlearn/generators.hpp"

#include <deque>
#include <map>
#include <string>

#include "advlearn/advice.hpp"
#include "advlearn/automata.hpp"
#include "advlearn/error.hpp"
#include "advlearn/rng.hpp"

namespace advlearn {

Dfa random_dfa(std::size_t n, const Alphabet& alphabet, double accept_prob, std::uint64_t seed) {
  if (n == 0) throw input_error("random_dfa needs at least one state");
  if (!(accept_prob >= 0.0 && accept_prob <= 1.0)) throw input_error("accept probability must lie in [0,1]");
  SplitMix64 rng(seed);
  const std::size_t k = alphabet.size();
  std::vector<bool> accepting(n);
  std::vector<State> delta(n * k);
  for (std::size_t q = 0; q < n; ++q) {
    accepting[q] = rng.bernoulli(accept_prob);
    for (std::size_t a = 0; a < k; ++a) delta[q * k + a] = static_cast<State>(rng.uniform_below(n));
  }
  return Dfa(alphabet, n, 0, std::move(accepting), std::move(delta));
}

Dfa make_letter_idempotent(const Dfa& d, Symbol a) {
  if (!d.alphabet().contains(a)) throw input_error("letter not in alphabet");
  const std::size_t k = d.alphabet().size();
  std::vector<State> delta = d.transitions();
  std::vector<char> image(d.num_states(), 0);
  for (State q = 0; q < d.num_states(); ++q) image[d.next(q, a)] = 1;
  for (State p = 0; p < d.num_states(); ++p)
    if (image[p]) delta[p * k + a] = p;
  return Dfa(d.alphabet(), d.num_states(), d.initial(), d.accepting(), std::move(delta));
}

Dfa pattern_dfa(const std::vector<Word>& patterns, PatternMode mode, const Alphabet& alphabet) {
  if (patterns.empty()) throw input_error("at least one pattern is required");
  if (patterns.size() > 30) throw input_error("too many patterns");
  const std::size_t k = alphabet.size();
  // Trie with goto completion and output masks (Aho-Corasick).
  std::vector<std::vector<State>> go(1, std::vector<State>(k, kNoState));
  std::vector<std::uint32_t> out(1, 0);
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const Word& p = patterns[i];
    if (p.empty()) throw input_error("patterns must be non-empty");
    alphabet.check(p);
    State node = 0;
    for (Symbol a : p) {
      if (go[node][a] == kNoState) {
        go[node][a] = static_cast<State>(go.size());
        go.emplace_back(k, kNoState);
        out.push_back(0);
      }
      node = go[node][a];
    }
    out[node] |= 1u << i;
  }
  std::vector<State> fail(go.size(), 0);
  std::deque<State> queue;
  for (Symbol a = 0; a < k; ++a) {
    if (go[0][a] == kNoState) {
      go[0][a] = 0;
    } else {
      fail[go[0][a]] = 0;
      queue.push_back(go[0][a]);
    }
  }
  while (!queue.empty()) {
    State node = queue.front();
    queue.pop_front();
    out[node] |= out[fail[node]];
    for (Symbol a = 0; a < k; ++a) {
      State child = go[node][a];
      if (child == kNoState) {
        go[node][a] = go[fail[node]][a];
      } else {
        fail[child] = go[fail[node]][a];
        queue.push_back(child);
      }
    }
  }

  const std::uint32_t full = patterns.size() == 32 ? ~0u : (1u << patterns.size()) - 1;
  auto accepts = [&](std::uint32_t mask) { return mode == PatternMode::any ? mask != 0 : mask == full; };
  // Product of the matcher with the set of patterns seen so far.
  std::map<std::pair<State, std::uint32_t>, State> ids;
  std::vector<std::pair<State, std::uint32_t>> states;
  auto intern = [&](State node, std::uint32_t mask) {
    auto [it, inserted] = ids.emplace(std::make_pair(node, mask), static_cast<State>(states.size()));
    if (inserted) states.emplace_back(node, mask);
    return it->second;
  };
  intern(0, out[0]);
  std::vector<State> delta;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [node, mask] = states[i];
    accepting.push_back(accepts(mask));
    for (Symbol a = 0; a < k; ++a) {
      State t = go[node][a];
      delta.push_back(intern(t, mask | out[t]));
    }
  }
  return minimize(Dfa(alphabet, states.size(), 0, std::move(accepting), std::move(delta)));
}

Alphabet union_alphabet(const Alphabet& a, const Alphabet& b) {
  std::vector<std::string> tokens = a.tokens();
  for (const auto& t : b.tokens())
    if (!a.find(t)) tokens.push_back(t);
  return Alphabet(std::move(tokens));
}

Dfa convolution(const Dfa& d1, const Dfa& d2) {
  Alphabet sigma = union_alphabet(d1.alphabet(), d2.alphabet());
  const std::size_t k = sigma.size();
  std::vector<std::optional<Symbol>> in1(k), in2(k);
  for (Symbol s = 0; s < k; ++s) {
    in1[s] = d1.alphabet().find(sigma.token(s));
    in2[s] = d2.alphabet().find(sigma.token(s));
  }
  const std::size_t n2 = d2.num_states();
  std::vector<State> id(d1.num_states() * n2, kNoState);
  std::vector<std::pair<State, State>> states;
  auto intern = [&](State p, State q) {
    State& slot = id[p * n2 + q];
    if (slot == kNoState) {
      slot = static_cast<State>(states.size());
      states.emplace_back(p, q);
    }
    return slot;
  };
  intern(d1.initial(), d2.initial());
  std::vector<State> delta;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q] = states[i];
    accepting.push_back(d1.is_accepting(p) && d2.is_accepting(q));
    for (Symbol s = 0; s < k; ++s) {
      State p2 = in1[s] ? d1.next(p, *in1[s]) : p;
      State q2 = in2[s] ? d2.next(q, *in2[s]) : q;
      delta.push_back(intern(p2, q2));
    }
  }
  return minimize(Dfa(sigma, states.size(), 0, std::move(accepting), std::move(delta)));
}

Alphabet bitadd_alphabet() {
  std::vector<std::string> tokens;
  for (int v = 0; v < 8; ++v)
    tokens.push_back("(" + std::to_string(v >> 2) + "," + std::to_string((v >> 1) & 1) + "," +
                     std::to_string(v & 1) + ")");
  return Alphabet(std::move(tokens));
}

Dfa bitadd_dfa() {
  // States: 0 carry 0, 1 carry 1, 2 reject sink.
  std::vector<State> delta(3 * 8);
  for (State carry = 0; carry < 2; ++carry)
    for (Symbol v = 0; v < 8; ++v) {
      unsigned a = v >> 2, b = (v >> 1) & 1, c = v & 1;
      unsigned sum = a + b + carry;
      delta[carry * 8 + v] = (sum % 2 == c) ? static_cast<State>(sum / 2) : 2;
    }
  for (Symbol v = 0; v < 8; ++v) delta[2 * 8 + v] = 2;
  return minimize(Dfa(bitadd_alphabet(), 3, 0, {true, false, false}, std::move(delta)));
}

Srs idempotent_srs(const Alphabet& alphabet, const std::vector<Word>& words) {
  std::vector<RewriteRule> rules;
  for (const auto& u : words) {
    if (u.empty()) throw input_error("idempotent rule needs a non-empty word");
    rules.push_back(RewriteRule{concat(u, u), u});
  }
  return Srs(alphabet, std::move(rules));
}

Srs commutation_srs(const Alphabet& alphabet, const std::vector<std::pair<Symbol, Symbol>>& independent) {
  std::vector<RewriteRule> rules;
  for (auto [x, y] : independent) {
    if (x == y) throw input_error("a letter is not independent of itself");
    Symbol a = std::min(x, y), b = std::max(x, y);
    RewriteRule rule{Word{b, a}, Word{a, b}};
    if (std::find(rules.begin(), rules.end(), rule) == rules.end()) rules.push_back(std::move(rule));
  }
  return Srs(alphabet, std::move(rules));
}

Srs convolution_srs(const Alphabet& sigma1, const Alphabet& sigma2) {
  Alphabet sigma = union_alphabet(sigma1, sigma2);
  std::vector<std::pair<Symbol, Symbol>> pairs;
  for (const auto& ta : sigma1.tokens()) {
    if (sigma2.find(ta)) continue;
    for (const auto& tb : sigma2.tokens()) {
      if (sigma1.find(tb)) continue;
      pairs.emplace_back(sigma.symbol(ta), sigma.symbol(tb));
    }
  }
  return commutation_srs(sigma, pairs);
}

Srs bitadd_srs() {
  Alphabet sigma = bitadd_alphabet();
  auto w = [&](const char* text) { return sigma.parse_word(text); };
  return Srs(sigma, {RewriteRule{w("(1,0,0)"), w("(0,1,0)")}, RewriteRule{w("(1,0,1)"), w("(0,1,1)")}});
}

Srs synchronizing_srs(const Alphabet& alphabet, const Word& w) {
  alphabet.check(w);
  std::vector<RewriteRule> rules;
  for (Symbol a = 0; a < alphabet.size(); ++a) {
    Word lhs{a};
    lhs.insert(lhs.end(), w.begin(), w.end());
    rules.push_back(RewriteRule{std::move(lhs), w});
  }
  return Srs(alphabet, std::move(rules));
}

Csrs encode_partial_dfa(const PartialDfa& b) {
  const std::size_t k = b.alphabet().size();
  std::vector<std::optional<Word>> access(b.num_states());
  std::vector<State> order{b.initial()};
  access[b.initial()] = Word{};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Symbol a = 0; a < k; ++a) {
      State t = b.next(order[i], a);
      if (t == kNoState || access[t]) continue;
      Word u = *access[order[i]];
      u.push_back(a);
      access[t] = std::move(u);
      order.push_back(t);
    }
  if (order.size() != b.num_states()) throw input_error("partial DFA has states unreachable from the initial state");
  Regex eps = Regex::epsilon();
  Regex all = Regex::universal(b.alphabet());
  std::vector<ControlledRule> rules;
  for (State q : order)
    for (Symbol a = 0; a < k; ++a) {
      State t = b.next(q, a);
      if (t == kNoState) continue;
      Word lhs = *access[q];
      lhs.push_back(a);
      if (lhs == *access[t]) continue;
      rules.push_back(ControlledRule{std::move(lhs), *access[t], eps, all});
    }
  return Csrs(b.alphabet(), std::move(rules));
}

PartialDfa prune_transitions(const Dfa& d, std::size_t keep, std::uint64_t seed) {
  if (keep == 0) throw input_error("keep must be at least 1");
  const std::size_t k = d.alphabet().size();
  std::size_t available = reachable_states(d).size() * k;
  if (keep > available)
    throw input_error("cannot keep " + std::to_string(keep) + " of " + std::to_string(available) + " transitions");
  SplitMix64 rng(seed);
  std::vector<char> reached(d.num_states(), 0);
  std::vector<char> kept(d.num_states() * k, 0);
  std::vector<std::size_t> frontier;  // transition ids q*k+a
  auto reach = [&](State q) {
    reached[q] = 1;
    for (Symbol a = 0; a < k; ++a) frontier.push_back(q * k + a);
  };
  reach(d.initial());
  for (std::size_t i = 0; i < keep; ++i) {
    std::size_t pick = rng.uniform_below(frontier.size());
    std::size_t t = frontier[pick];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
    kept[t] = 1;
    State target = d.transitions()[t];
    if (!reached[target]) reach(target);
  }
  std::vector<State> renumber(d.num_states(), kNoState);
  std::size_t n = 0;
  for (State q = 0; q < d.num_states(); ++q)
    if (reached[q]) renumber[q] = static_cast<State>(n++);
  std::vector<bool> accepting(n);
  std::vector<State> delta(n * k, kNoState);
  for (State q = 0; q < d.num_states(); ++q) {
    if (!reached[q]) continue;
    accepting[renumber[q]] = d.is_accepting(q);
    for (Symbol a = 0; a < k; ++a)
      if (kept[q * k + a]) delta[renumber[q] * k + a] = renumber[d.next(q, a)];
  }
  return PartialDfa(d.alphabet(), n, renumber[d.initial()], std::move(accepting), std::move(delta));
}

}  // namespace advlearn
