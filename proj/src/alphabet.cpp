#include "advlearn/alphabet.hpp"

#include <cctype>
#include <sstream>

#include "advlearn/error.hpp"

namespace advlearn {

namespace {

bool has_space(std::string_view s) {
  for (unsigned char c : s)
    if (std::isspace(c)) return true;
  return false;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> tokens) {
  if (tokens.empty()) throw input_error("alphabet must not be empty");
  auto impl = std::make_shared<Impl>();
  for (auto& t : tokens) {
    if (t.empty() || has_space(t)) throw input_error("invalid alphabet token '" + t + "'");
    if (t == "_") throw input_error("'_' is reserved for the empty word");
    Symbol id = static_cast<Symbol>(impl->tokens.size());
    if (!impl->index.emplace(t, id).second) throw input_error("duplicate alphabet token '" + t + "'");
    impl->tokens.push_back(std::move(t));
  }
  impl_ = std::move(impl);
}

const std::string& Alphabet::token(Symbol s) const {
  if (!contains(s)) throw input_error("symbol index " + std::to_string(s) + " out of range");
  return impl_->tokens[s];
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  auto it = impl_->index.find(std::string(token));
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::symbol(std::string_view token) const {
  if (auto s = find(token)) return *s;
  throw input_error("symbol '" + std::string(token) + "' not in alphabet");
}

void Alphabet::check(const Word& w) const {
  for (Symbol s : w)
    if (!contains(s)) throw input_error("symbol index " + std::to_string(s) + " not in alphabet");
}

Word Alphabet::parse_word(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::string tok;
  Word w;
  bool saw_epsilon = false;
  while (in >> tok) {
    if (tok == "_") {
      saw_epsilon = true;
      continue;
    }
    w.push_back(symbol(tok));
  }
  if (saw_epsilon && !w.empty()) throw input_error("'_' cannot be mixed with other symbols");
  return w;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "_";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += token(w[i]);
  }
  return out;
}

void for_each_word(std::size_t alphabet_size, std::size_t max_length,
                   const std::function<void(const Word&)>& fn) {
  Word w;
  fn(w);
  if (alphabet_size == 0) return;
  for (std::size_t len = 1; len <= max_length; ++len) {
    w.assign(len, 0);
    while (true) {
      fn(w);
      std::size_t i = len;
      while (i > 0 && ++w[i - 1] == alphabet_size) {
        w[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
}

}  // namespace advlearn
