#pragma once

#include <memory>

#include "advlearn/alphabet.hpp"

namespace advlearn {

/// Regular expression tree: ∅, ε, a, e1·e2, e1+e2, e*. Immutable and shared.
class Regex {
 public:
  enum class Kind { empty_set, epsilon, symbol, concat, alt, star };

  static Regex empty_set();
  static Regex epsilon();
  static Regex symbol(Symbol a);
  static Regex concat(Regex lhs, Regex rhs);
  static Regex alt(Regex lhs, Regex rhs);
  static Regex star(Regex inner);

  /// Σ as the left-nested alternation a1 + a2 + ... + an.
  static Regex any_symbol(const Alphabet& alphabet);
  /// Σ*.
  static Regex universal(const Alphabet& alphabet);
  /// The single word w (ε when empty).
  static Regex word(const Word& w);

  Kind kind() const noexcept { return node_->kind; }
  Symbol symbol() const noexcept { return node_->symbol; }
  const Regex& left() const { return *node_->left; }
  const Regex& right() const { return *node_->right; }
  const Regex& inner() const { return *node_->left; }

  bool is_epsilon() const noexcept { return kind() == Kind::epsilon; }
  /// Structurally Σ* (star of an alternation covering every symbol).
  bool is_universal(std::size_t alphabet_size) const;
  /// Structurally Σ (alternation that covers every symbol exactly).
  bool is_any_symbol(std::size_t alphabet_size) const;

  /// Largest symbol index used plus one (0 if none).
  std::size_t symbol_bound() const;

  friend bool operator==(const Regex& a, const Regex& b);
  friend bool operator!=(const Regex& a, const Regex& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    Symbol symbol = 0;
    std::shared_ptr<const Regex> left = nullptr;
    std::shared_ptr<const Regex> right = nullptr;
  };
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace advlearn
