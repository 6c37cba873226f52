#include "advlearn/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "advlearn/error.hpp"

namespace advlearn {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::string text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    out.push_back(Line{number, std::move(line)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<Token> tokenize(const std::string& s, std::size_t offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_space(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    out.push_back(Token{s.substr(i, j - i), offset + i + 1});
    i = j;
  }
  return out;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

// Splits "key: rest" and returns the key, or nullopt if there is no colon
// right after the first word.
std::optional<std::string> header_key(const std::string& line, std::size_t& rest_offset) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  std::size_t j = i;
  while (j < line.size() && !is_space(line[j]) && line[j] != ':') ++j;
  if (j >= line.size() || line[j] != ':') return std::nullopt;
  rest_offset = j + 1;
  return line.substr(i, j - i);
}

Alphabet make_alphabet(const std::vector<Token>& tokens, std::size_t line) {
  if (tokens.empty()) throw parse_error(line, 1, "empty alphabet");
  std::vector<std::string> names;
  for (const auto& t : tokens) names.push_back(t.text);
  try {
    return Alphabet(std::move(names));
  } catch (const input_error& e) {
    throw parse_error(line, tokens.front().column, e.what());
  }
}

Symbol symbol_at(const Alphabet& alphabet, const Token& t, std::size_t line) {
  auto s = alphabet.find(t.text);
  if (!s) throw parse_error(line, t.column, "unknown symbol '" + t.text + "'");
  return *s;
}

struct RawAutomaton {
  std::optional<Alphabet> alphabet;
  std::optional<Alphabet> outputs;
  std::vector<std::string> states;
  std::unordered_map<std::string, State> state_index;
  std::optional<State> initial;
  std::vector<State> accepting;
  bool has_accepting_line = false;
  struct Entry {
    State from;
    Symbol symbol;
    std::string value;
    std::size_t line;
    std::size_t column;
  };
  std::vector<Entry> trans;
  std::vector<Entry> out;
  std::size_t states_line = 0;
};

State state_at(const RawAutomaton& raw, const Token& t, std::size_t line) {
  auto it = raw.state_index.find(t.text);
  if (it == raw.state_index.end()) throw parse_error(line, t.column, "unknown state '" + t.text + "'");
  return it->second;
}

RawAutomaton read_automaton(std::string_view text) {
  RawAutomaton raw;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    std::size_t rest = 0;
    auto key = header_key(line.text, rest);
    if (!key) throw parse_error(line.number, 1, "expected 'key:' at the start of the line");
    auto tokens = tokenize(line.text.substr(rest), rest);
    const std::size_t n = line.number;
    if (*key == "alphabet") {
      if (raw.alphabet) throw parse_error(n, 1, "duplicate alphabet line");
      raw.alphabet = make_alphabet(tokens, n);
    } else if (*key == "outputs") {
      if (raw.outputs) throw parse_error(n, 1, "duplicate outputs line");
      raw.outputs = make_alphabet(tokens, n);
    } else if (*key == "states") {
      if (!raw.states.empty()) throw parse_error(n, 1, "duplicate states line");
      if (tokens.empty()) throw parse_error(n, rest + 1, "no states listed");
      for (const auto& t : tokens) {
        if (!raw.state_index.emplace(t.text, static_cast<State>(raw.states.size())).second)
          throw parse_error(n, t.column, "duplicate state '" + t.text + "'");
        raw.states.push_back(t.text);
      }
      raw.states_line = n;
    } else if (*key == "initial") {
      if (raw.states.empty()) throw parse_error(n, 1, "initial state given before the states line");
      if (tokens.size() != 1) throw parse_error(n, rest + 1, "expected exactly one initial state");
      if (raw.initial) throw parse_error(n, 1, "duplicate initial line");
      raw.initial = state_at(raw, tokens[0], n);
    } else if (*key == "accepting") {
      if (raw.states.empty()) throw parse_error(n, 1, "accepting states given before the states line");
      raw.has_accepting_line = true;
      for (const auto& t : tokens) raw.accepting.push_back(state_at(raw, t, n));
    } else if (*key == "trans" || *key == "out") {
      if (!raw.alphabet || raw.states.empty())
        throw parse_error(n, 1, "alphabet and states must precede transitions");
      if (tokens.size() != 3) throw parse_error(n, rest + 1, "expected '<state> <symbol> <" +
                                                                  std::string(*key == "trans" ? "state" : "output") +
                                                                  ">'");
      RawAutomaton::Entry e{state_at(raw, tokens[0], n), symbol_at(*raw.alphabet, tokens[1], n), tokens[2].text, n,
                            tokens[2].column};
      (*key == "trans" ? raw.trans : raw.out).push_back(std::move(e));
    } else {
      throw parse_error(n, 1, "unknown key '" + *key + "'");
    }
  }
  if (!raw.alphabet) throw parse_error(1, 1, "missing alphabet line");
  if (raw.states.empty()) throw parse_error(1, 1, "missing states line");
  if (!raw.initial) throw parse_error(1, 1, "missing initial line");
  return raw;
}

std::vector<State> transition_table(const RawAutomaton& raw, bool complete_with_sink, std::size_t& num_states) {
  const std::size_t k = raw.alphabet->size();
  num_states = raw.states.size();
  std::vector<State> delta(num_states * k, kNoState);
  for (const auto& e : raw.trans) {
    auto it = raw.state_index.find(e.value);
    if (it == raw.state_index.end()) throw parse_error(e.line, e.column, "unknown state '" + e.value + "'");
    State& slot = delta[e.from * k + e.symbol];
    if (slot != kNoState) throw parse_error(e.line, 1, "duplicate transition");
    slot = it->second;
  }
  bool missing = std::count(delta.begin(), delta.end(), kNoState) > 0;
  if (!missing) return delta;
  if (!complete_with_sink) {
    for (std::size_t i = 0; i < delta.size(); ++i)
      if (delta[i] == kNoState)
        throw parse_error(raw.states_line, 1,
                          "missing transition from '" + raw.states[i / k] + "' on '" +
                              raw.alphabet->token(static_cast<Symbol>(i % k)) + "'");
  }
  State sink = static_cast<State>(num_states++);
  for (auto& t : delta)
    if (t == kNoState) t = sink;
  for (std::size_t a = 0; a < k; ++a) delta.push_back(sink);
  return delta;
}

Dfa build_dfa(const RawAutomaton& raw, bool complete_with_sink) {
  std::size_t n = 0;
  auto delta = transition_table(raw, complete_with_sink, n);
  std::vector<bool> accepting(n, false);
  for (State q : raw.accepting) accepting[q] = true;
  return Dfa(*raw.alphabet, n, *raw.initial, std::move(accepting), std::move(delta));
}

MealyMachine build_mealy(const RawAutomaton& raw) {
  if (raw.has_accepting_line) throw parse_error(1, 1, "a Mealy machine has no accepting states");
  std::size_t n = 0;
  auto delta = transition_table(raw, false, n);
  Alphabet outputs = [&] {
    if (raw.outputs) return *raw.outputs;
    std::set<std::string> names;
    for (const auto& e : raw.out) names.insert(e.value);
    if (names.empty()) throw parse_error(1, 1, "no outputs");
    return Alphabet(std::vector<std::string>(names.begin(), names.end()));
  }();
  const std::size_t k = raw.alphabet->size();
  std::vector<Symbol> lambda(n * k, kNoState);
  for (const auto& e : raw.out) {
    auto o = outputs.find(e.value);
    if (!o) throw parse_error(e.line, e.column, "unknown output '" + e.value + "'");
    Symbol& slot = lambda[e.from * k + e.symbol];
    if (slot != kNoState) throw parse_error(e.line, 1, "duplicate output");
    slot = *o;
  }
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i] == kNoState)
      throw parse_error(raw.states_line, 1,
                        "missing output for '" + raw.states[i / k] + "' on '" +
                            raw.alphabet->token(static_cast<Symbol>(i % k)) + "'");
  return MealyMachine(*raw.alphabet, outputs, n, *raw.initial, std::move(delta), std::move(lambda));
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ' ';
    out += parts[i];
  }
  return out;
}

std::string state_name(State q) { return "q" + std::to_string(q); }

std::string states_line(std::size_t n) {
  std::string out = "states:";
  for (State q = 0; q < n; ++q) out += " " + state_name(q);
  return out + "\n";
}

}  // namespace

Automaton parse_automaton(std::string_view text, bool complete_with_sink) {
  RawAutomaton raw = read_automaton(text);
  if (raw.outputs || !raw.out.empty()) {
    if (complete_with_sink) throw input_error("--complete-with-sink applies to DFAs only");
    return build_mealy(raw);
  }
  return build_dfa(raw, complete_with_sink);
}

Dfa parse_dfa(std::string_view text, bool complete_with_sink) {
  auto a = parse_automaton(text, complete_with_sink);
  if (!std::holds_alternative<Dfa>(a)) throw input_error("expected a DFA, found a Mealy machine");
  return std::get<Dfa>(std::move(a));
}

MealyMachine parse_mealy(std::string_view text) {
  auto a = parse_automaton(text);
  if (!std::holds_alternative<MealyMachine>(a)) throw input_error("expected a Mealy machine, found a DFA");
  return std::get<MealyMachine>(std::move(a));
}

std::string serialize(const Dfa& d) {
  std::ostringstream out;
  out << "alphabet: " << join(d.alphabet().tokens()) << "\n" << states_line(d.num_states());
  out << "initial: " << state_name(d.initial()) << "\n";
  out << "accepting:";
  for (State q = 0; q < d.num_states(); ++q)
    if (d.is_accepting(q)) out << " " << state_name(q);
  out << "\n";
  for (State q = 0; q < d.num_states(); ++q)
    for (Symbol a = 0; a < d.alphabet().size(); ++a)
      out << "trans: " << state_name(q) << " " << d.alphabet().token(a) << " " << state_name(d.next(q, a)) << "\n";
  return out.str();
}

std::string serialize(const MealyMachine& m) {
  std::ostringstream out;
  out << "alphabet: " << join(m.inputs().tokens()) << "\n";
  out << "outputs: " << join(m.outputs().tokens()) << "\n" << states_line(m.num_states());
  out << "initial: " << state_name(m.initial()) << "\n";
  for (State q = 0; q < m.num_states(); ++q)
    for (Symbol a = 0; a < m.inputs().size(); ++a)
      out << "trans: " << state_name(q) << " " << m.inputs().token(a) << " " << state_name(m.next(q, a)) << "\n";
  for (State q = 0; q < m.num_states(); ++q)
    for (Symbol a = 0; a < m.inputs().size(); ++a)
      out << "out: " << state_name(q) << " " << m.inputs().token(a) << " " << m.outputs().token(m.output(q, a))
          << "\n";
  return out.str();
}

namespace {

struct RuleLine {
  std::size_t number;
  std::string lhs;
  std::size_t lhs_offset;
  std::string rhs;
  std::size_t rhs_offset;
  std::vector<std::pair<std::string, std::size_t>> extras;  // text after each '|', with offset
};

// Collects the optional alphabet header and the rule lines.
std::vector<RuleLine> read_rules(std::string_view text, std::optional<Alphabet>& header, bool allow_contexts) {
  std::vector<RuleLine> rules;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    std::size_t rest = 0;
    if (auto key = header_key(line.text, rest); key && *key == "alphabet") {
      if (header) throw parse_error(line.number, 1, "duplicate alphabet line");
      if (!rules.empty()) throw parse_error(line.number, 1, "alphabet line must come before the rules");
      header = make_alphabet(tokenize(line.text.substr(rest), rest), line.number);
      continue;
    }
    std::vector<std::size_t> bars;
    for (std::size_t i = 0; i < line.text.size(); ++i)
      if (line.text[i] == '|') bars.push_back(i);
    if (!allow_contexts && !bars.empty()) throw parse_error(line.number, bars[0] + 1, "unexpected '|'");
    std::size_t rule_end = bars.empty() ? line.text.size() : bars[0];
    std::string rule = line.text.substr(0, rule_end);
    std::size_t arrow = rule.find("->");
    if (arrow == std::string::npos) throw parse_error(line.number, 1, "expected 'LHS -> RHS'");
    RuleLine r{line.number, rule.substr(0, arrow), 0, rule.substr(arrow + 2), arrow + 2, {}};
    for (std::size_t b = 0; b < bars.size(); ++b) {
      std::size_t end = b + 1 < bars.size() ? bars[b + 1] : line.text.size();
      r.extras.emplace_back(line.text.substr(bars[b] + 1, end - bars[b] - 1), bars[b] + 1);
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

Word parse_side(const Alphabet& alphabet, const std::string& text, std::size_t offset, std::size_t line) {
  auto tokens = tokenize(text, offset);
  if (tokens.empty()) throw parse_error(line, offset + 1, "empty side; write '_' for the empty word");
  if (tokens.size() == 1 && tokens[0].text == "_") return Word{};
  Word w;
  for (const auto& t : tokens) {
    if (t.text == "_") throw parse_error(line, t.column, "'_' must stand alone");
    w.push_back(symbol_at(alphabet, t, line));
  }
  return w;
}

Alphabet rules_alphabet(const std::vector<RuleLine>& rules, const std::optional<Alphabet>& header,
                        const std::optional<Alphabet>& given) {
  if (header) return *header;
  if (given) return *given;
  std::set<std::string> names;
  for (const auto& r : rules)
    for (const auto* side : {&r.lhs, &r.rhs})
      for (const auto& t : tokenize(*side))
        if (t.text != "_") names.insert(t.text);
  if (names.empty()) throw parse_error(1, 1, "cannot infer an alphabet from an empty system");
  return Alphabet(std::vector<std::string>(names.begin(), names.end()));
}

}  // namespace

Srs parse_srs(std::string_view text, const std::optional<Alphabet>& alphabet, bool one_sided) {
  std::optional<Alphabet> header;
  auto lines = read_rules(text, header, false);
  Alphabet sigma = rules_alphabet(lines, header, alphabet);
  std::vector<RewriteRule> rules;
  for (const auto& r : lines) {
    Word lhs = parse_side(sigma, r.lhs, r.lhs_offset, r.number);
    Word rhs = parse_side(sigma, r.rhs, r.rhs_offset, r.number);
    if (lhs == rhs) throw parse_error(r.number, 1, "rule sides are identical");
    if (lhs.empty() && !one_sided) throw parse_error(r.number, 1, "empty left-hand side needs one-sided advice");
    rules.push_back(RewriteRule{std::move(lhs), std::move(rhs)});
  }
  return Srs(sigma, std::move(rules), one_sided);
}

std::string serialize(const Srs& r) {
  std::ostringstream out;
  out << "alphabet: " << join(r.alphabet().tokens()) << "\n";
  for (const auto& rule : r.rules())
    out << r.alphabet().format(rule.lhs) << " -> " << r.alphabet().format(rule.rhs) << "\n";
  return out.str();
}

Csrs parse_csrs(std::string_view text, const std::optional<Alphabet>& alphabet) {
  std::optional<Alphabet> header;
  auto lines = read_rules(text, header, true);
  Alphabet sigma = rules_alphabet(lines, header, alphabet);
  std::vector<ControlledRule> rules;
  for (const auto& r : lines) {
    Word lhs = parse_side(sigma, r.lhs, r.lhs_offset, r.number);
    Word rhs = parse_side(sigma, r.rhs, r.rhs_offset, r.number);
    if (lhs.empty()) throw parse_error(r.number, 1, "empty left-hand side");
    if (lhs == rhs) throw parse_error(r.number, 1, "rule sides are identical");
    std::optional<Regex> ex, ey;
    for (const auto& [part, offset] : r.extras) {
      std::size_t eq = part.find('=');
      if (eq == std::string::npos) throw parse_error(r.number, offset + 1, "expected 'ex = REGEX' or 'ey = REGEX'");
      auto key_tokens = tokenize(part.substr(0, eq), offset);
      if (key_tokens.size() != 1) throw parse_error(r.number, offset + 1, "expected 'ex' or 'ey'");
      Regex e = parse_regex(part.substr(eq + 1), sigma, r.number, offset + eq + 2);
      auto& slot = key_tokens[0].text == "ex" ? ex : key_tokens[0].text == "ey" ? ey : ex;
      if (key_tokens[0].text != "ex" && key_tokens[0].text != "ey")
        throw parse_error(r.number, key_tokens[0].column, "unknown context '" + key_tokens[0].text + "'");
      if (slot) throw parse_error(r.number, key_tokens[0].column, "duplicate context");
      slot = std::move(e);
    }
    rules.push_back(ControlledRule{std::move(lhs), std::move(rhs), ex.value_or(Regex::universal(sigma)),
                                   ey.value_or(Regex::universal(sigma))});
  }
  return Csrs(sigma, std::move(rules));
}

std::string serialize(const Csrs& c) {
  std::ostringstream out;
  out << "alphabet: " << join(c.alphabet().tokens()) << "\n";
  for (const auto& rule : c.rules())
    out << c.alphabet().format(rule.lhs) << " -> " << c.alphabet().format(rule.rhs)
        << " | ex = " << format_regex(rule.prefix_ctx, c.alphabet())
        << " | ey = " << format_regex(rule.suffix_ctx, c.alphabet()) << "\n";
  return out.str();
}

namespace {

class RegexParser {
 public:
  RegexParser(std::string_view text, const Alphabet& alphabet, std::size_t line, std::size_t column)
      : text_(text), alphabet_(alphabet), line_(line), column_(column) {
    for (const auto& t : alphabet.tokens()) longest_ = std::max(longest_, t.size());
  }

  Regex parse() {
    skip();
    if (pos_ == text_.size()) fail("empty regular expression");
    Regex e = alternation();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw parse_error(line_, column_ + pos_, message); }

  void skip() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  // Longest alphabet token at the current position.
  std::optional<std::pair<Symbol, std::size_t>> token_here() const {
    for (std::size_t len = std::min(longest_, text_.size() - pos_); len > 0; --len)
      if (auto s = alphabet_.find(text_.substr(pos_, len))) return std::make_pair(*s, len);
    return std::nullopt;
  }

  bool starts_atom() {
    skip();
    if (pos_ == text_.size()) return false;
    if (token_here()) return true;
    char c = text_[pos_];
    return c == '(' || c == '~' || c == '!' || c == '.';
  }

  Regex alternation() {
    Regex e = concatenation();
    while (true) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '+' && !token_here()) {
        ++pos_;
        e = Regex::alt(std::move(e), concatenation());
      } else {
        return e;
      }
    }
  }

  Regex concatenation() {
    if (!starts_atom()) fail("expected a symbol, '(', '~', '!' or '.'");
    Regex e = starred();
    while (starts_atom()) e = Regex::concat(std::move(e), starred());
    return e;
  }

  Regex starred() {
    Regex e = atom();
    while (true) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '*' && !token_here()) {
        ++pos_;
        e = Regex::star(std::move(e));
      } else {
        return e;
      }
    }
  }

  Regex atom() {
    skip();
    if (auto t = token_here()) {
      pos_ += t->second;
      return Regex::symbol(t->first);
    }
    char c = text_[pos_++];
    switch (c) {
      case '~':
        return Regex::epsilon();
      case '!':
        return Regex::empty_set();
      case '.':
        return Regex::any_symbol(alphabet_);
      case '(': {
        Regex e = alternation();
        skip();
        if (pos_ == text_.size() || text_[pos_] != ')') fail("expected ')'");
        ++pos_;
        return e;
      }
      default:
        --pos_;
        fail("unexpected '" + std::string(1, c) + "'");
    }
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
  std::size_t longest_ = 0;
};

enum Precedence { kAlt = 0, kConcat = 1, kStar = 2 };

void print(const Regex& e, const Alphabet& alphabet, int context, std::string& out) {
  if (e == Regex::any_symbol(alphabet) && alphabet.size() > 1) {
    out += ".";
    return;
  }
  switch (e.kind()) {
    case Regex::Kind::empty_set:
      out += "!";
      return;
    case Regex::Kind::epsilon:
      out += "~";
      return;
    case Regex::Kind::symbol:
      out += alphabet.token(e.symbol());
      return;
    case Regex::Kind::star:
      print(e.inner(), alphabet, kStar, out);
      out += "*";
      return;
    case Regex::Kind::concat: {
      bool paren = context > kConcat;
      if (paren) out += "(";
      print(e.left(), alphabet, kConcat, out);
      out += " ";
      print(e.right(), alphabet, kStar, out);
      if (paren) out += ")";
      return;
    }
    case Regex::Kind::alt: {
      bool paren = context > kAlt;
      if (paren) out += "(";
      print(e.left(), alphabet, kAlt, out);
      out += " + ";
      print(e.right(), alphabet, kConcat, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

Regex parse_regex(std::string_view text, const Alphabet& alphabet, std::size_t line, std::size_t column) {
  return RegexParser(text, alphabet, line, column).parse();
}

std::string format_regex(const Regex& e, const Alphabet& alphabet) {
  std::string out;
  print(e, alphabet, kAlt, out);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace advlearn
