#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace advlearn {

/// Index of a token in its alphabet. The alphabet's total order is index order.
using Symbol = std::uint32_t;

/// A finite word; the empty vector is the empty word.
using Word = std::vector<Symbol>;

using State = std::uint32_t;

inline constexpr State kNoState = static_cast<State>(-1);

/// FNV-style hash over any contiguous range of integral values.
struct RangeHash {
  template <typename Range>
  std::size_t operator()(const Range& range) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& v : range) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using WordHash = RangeHash;

/// Ordered set of whitespace-free tokens. Copies share storage.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return impl_->tokens.size(); }
  const std::vector<std::string>& tokens() const noexcept { return impl_->tokens; }
  const std::string& token(Symbol s) const;

  Symbol symbol(std::string_view token) const;
  std::optional<Symbol> find(std::string_view token) const;
  bool contains(Symbol s) const noexcept { return s < size(); }

  /// Throws input_error if some symbol of `w` is out of range.
  void check(const Word& w) const;

  /// Space-separated tokens; "_" or an empty string is the empty word.
  Word parse_word(std::string_view text) const;

  /// Inverse of parse_word; the empty word prints as "_".
  std::string format(const Word& w) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
    return a.impl_ == b.impl_ || a.impl_->tokens == b.impl_->tokens;
  }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) noexcept { return !(a == b); }

 private:
  struct Impl {
    std::vector<std::string> tokens;
    std::unordered_map<std::string, Symbol> index;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Shortlex order: shorter first, then lexicographic by symbol index.
inline bool shortlex_less(const Word& a, const Word& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word concat(const Word& a, const Word& b, const Word& c) {
  Word out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

/// Calls `fn(word)` for every word over `alphabet_size` symbols with length
/// at most `max_length`, in shortlex order.
void for_each_word(std::size_t alphabet_size, std::size_t max_length,
                   const std::function<void(const Word&)>& fn);

}  // namespace advlearn
