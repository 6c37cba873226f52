#pragma once

#include <cstddef>
#include <vector>

#include "advlearn/alphabet.hpp"

namespace advlearn {

// Left-hand side i placed at 0 of `word` and j at `position`, overlapping.
// Covers proper overlaps and containments, a rule with itself included.
struct Overlap {
  std::size_t first;
  std::size_t second;
  std::size_t position;
  Word word;
};

inline std::vector<Overlap> enumerate_overlaps(const std::vector<Word>& lhs) {
  std::vector<Overlap> out;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const Word& li = lhs[i];
    for (std::size_t j = 0; j < lhs.size(); ++j) {
      const Word& lj = lhs[j];
      if (li.empty() || lj.empty()) continue;
      for (std::size_t p = 0; p < li.size(); ++p) {
        if (p == 0 && i == j) continue;
        std::size_t shared = std::min(li.size() - p, lj.size());
        if (!std::equal(lj.begin(), lj.begin() + static_cast<std::ptrdiff_t>(shared),
                        li.begin() + static_cast<std::ptrdiff_t>(p)))
          continue;
        // A containment at p = 0 with j longer is listed as (j, i).
        if (p == 0 && lj.size() > li.size()) continue;
        Word w = li;
        w.insert(w.end(), lj.begin() + static_cast<std::ptrdiff_t>(shared), lj.end());
        out.push_back(Overlap{i, j, p, std::move(w)});
      }
    }
  }
  return out;
}

}  // namespace advlearn
