#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pi1scan/abelian.hpp"
#include "pi1scan/complex.hpp"

namespace pi1scan {

/// Word over signed generator indices: +g is generator g (1-based), -g its inverse.
using Word = std::vector<int>;

struct Presentation {
  int gens = 0;
  std::vector<Word> relators;

  std::size_t total_length() const;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

Word inverse(const Word& w);
Word free_reduce(const Word& w);
/// Free reduction followed by cancelling inverse letters at the two ends.
Word cyclic_reduce(const Word& w);

/// Edge-path group of a connected complex. The spanning tree is the BFS tree from the
/// smallest vertex, visiting neighbours in increasing order; the non-tree edges, in
/// lexicographic order, are generators 1..g, and every triangle u<v<w contributes
/// g_uv g_vw g_uw^-1 with tree edges deleted. Throws ComplexError if `k` is disconnected.
Presentation edge_path_presentation(const Complex& k);

inline constexpr long kDefaultTietzeBudget = 100000;

/// Deterministic Tietze simplification. Moves, cheapest first: free and cyclic
/// reduction with removal of trivial and duplicate relators, elimination of a generator
/// occurring once in a relator, and replacement of a long common subword by the shorter
/// side of another relator. A move is accepted only if the total relator length does
/// not grow. Each accepted move costs one unit of `budget`.
Presentation tietze_simplify(Presentation p, long budget = kDefaultTietzeBudget);

/// Smith normal form of the relator exponent-sum matrix.
AbelianInvariants abelianization(const Presentation& p);

/// Stable text key for caching; equal keys mean identical presentations.
std::string presentation_key(const Presentation& p);

}  // namespace pi1scan
