#include "advlearn/regex.hpp"

#include <algorithm>
#include <vector>

#include "advlearn/error.hpp"

namespace advlearn {

Regex Regex::empty_set() { return Regex(std::make_shared<Node>(Node{Kind::empty_set})); }

Regex Regex::epsilon() { return Regex(std::make_shared<Node>(Node{Kind::epsilon})); }

Regex Regex::symbol(Symbol a) { return Regex(std::make_shared<Node>(Node{Kind::symbol, a})); }

Regex Regex::concat(Regex lhs, Regex rhs) {
  return Regex(std::make_shared<Node>(Node{Kind::concat, 0, std::make_shared<const Regex>(std::move(lhs)),
                                           std::make_shared<const Regex>(std::move(rhs))}));
}

Regex Regex::alt(Regex lhs, Regex rhs) {
  return Regex(std::make_shared<Node>(Node{Kind::alt, 0, std::make_shared<const Regex>(std::move(lhs)),
                                           std::make_shared<const Regex>(std::move(rhs))}));
}

Regex Regex::star(Regex inner) {
  return Regex(
      std::make_shared<Node>(Node{Kind::star, 0, std::make_shared<const Regex>(std::move(inner)), nullptr}));
}

Regex Regex::any_symbol(const Alphabet& alphabet) {
  Regex e = symbol(0);
  for (Symbol a = 1; a < alphabet.size(); ++a) e = alt(std::move(e), symbol(a));
  return e;
}

Regex Regex::universal(const Alphabet& alphabet) { return star(any_symbol(alphabet)); }

Regex Regex::word(const Word& w) {
  if (w.empty()) return epsilon();
  Regex e = symbol(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) e = concat(std::move(e), symbol(w[i]));
  return e;
}

namespace {

// Collects the leaves of a pure alternation of symbols; false if some
// other constructor appears.
bool collect_alt_symbols(const Regex& e, std::vector<Symbol>& out) {
  switch (e.kind()) {
    case Regex::Kind::symbol:
      out.push_back(e.symbol());
      return true;
    case Regex::Kind::alt:
      return collect_alt_symbols(e.left(), out) && collect_alt_symbols(e.right(), out);
    default:
      return false;
  }
}

}  // namespace

bool Regex::is_any_symbol(std::size_t alphabet_size) const {
  std::vector<Symbol> syms;
  if (!collect_alt_symbols(*this, syms)) return false;
  std::sort(syms.begin(), syms.end());
  syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
  if (syms.size() != alphabet_size) return false;
  for (std::size_t i = 0; i < syms.size(); ++i)
    if (syms[i] != i) return false;
  return true;
}

bool Regex::is_universal(std::size_t alphabet_size) const {
  return kind() == Kind::star && inner().is_any_symbol(alphabet_size);
}

std::size_t Regex::symbol_bound() const {
  switch (kind()) {
    case Kind::empty_set:
    case Kind::epsilon:
      return 0;
    case Kind::symbol:
      return static_cast<std::size_t>(symbol()) + 1;
    case Kind::star:
      return inner().symbol_bound();
    default:
      return std::max(left().symbol_bound(), right().symbol_bound());
  }
}

bool operator==(const Regex& a, const Regex& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Regex::Kind::empty_set:
    case Regex::Kind::epsilon:
      return true;
    case Regex::Kind::symbol:
      return a.symbol() == b.symbol();
    case Regex::Kind::star:
      return a.inner() == b.inner();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

}  // namespace advlearn
