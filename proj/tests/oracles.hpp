// Brute-force reference computations used as independent test oracles.
#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "pi1scan/complex.hpp"
#include "pi1scan/presentation.hpp"

namespace oracle {

using pi1scan::VertexSet;

inline int popcount(unsigned x) { return __builtin_popcount(x); }

/// Every nonempty subset of every facet.
inline std::set<VertexSet> closure(const std::vector<VertexSet>& facets) {
  std::set<VertexSet> out;
  for (VertexSet f : facets)
    for (unsigned s = f; s; s = (s - 1) & f) out.insert(static_cast<VertexSet>(s));
  return out;
}

/// Simplices that are proper faces of exactly one simplex, by direct incidence count.
inline std::vector<VertexSet> free_faces(const std::vector<VertexSet>& facets) {
  const auto all = closure(facets);
  std::vector<VertexSet> out;
  for (VertexSet s : all) {
    int cofaces = 0;
    for (VertexSet t : all)
      if (t != s && (t & s) == s) ++cofaces;
    if (cofaces == 1) out.push_back(s);
  }
  return out;
}

/// Connectivity of a vertex set under a list of edges (pairs), by repeated relaxation.
inline bool connected(unsigned vertices, const std::vector<std::pair<int, int>>& edges) {
  if (!vertices) return true;
  unsigned reached = vertices & (~vertices + 1);
  for (bool grew = true; grew;) {
    grew = false;
    for (auto [a, b] : edges) {
      const unsigned ea = 1u << a, eb = 1u << b;
      if ((reached & ea) && !(reached & eb)) reached |= eb, grew = true;
      if ((reached & eb) && !(reached & ea)) reached |= ea, grew = true;
    }
  }
  return (vertices & ~reached) == 0;
}

inline std::vector<std::pair<int, int>> edges_of(const std::vector<VertexSet>& facets) {
  std::set<std::pair<int, int>> e;
  for (VertexSet f : facets)
    for (int a = 0; a < 16; ++a)
      for (int b = a + 1; b < 16; ++b)
        if ((f >> a & 1) && (f >> b & 1)) e.insert({a, b});
  return {e.begin(), e.end()};
}

inline bool complex_connected(const pi1scan::Complex& k) {
  unsigned v = 0;
  for (VertexSet f : k.facets()) v |= f;
  return connected(v, edges_of(k.facets()));
}

/// Triangles of a mask as sorted vertex triples.
inline std::vector<std::array<int, 3>> triangles(int n, std::uint64_t mask) {
  std::vector<std::array<int, 3>> out;
  for (int c = 2; c < n; ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a)
        if (mask >> pi1scan::triangle_rank(a, b, c) & 1) out.push_back({a, b, c});
  return out;
}

/// Lex-least sorted rank list over all n! relabelings, returned as a mask.
inline std::uint64_t canonical(int n, std::uint64_t mask) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const auto tris = triangles(n, mask);
  std::vector<int> best;
  do {
    std::vector<int> ranks;
    for (auto t : tris) ranks.push_back(pi1scan::triangle_rank(perm[t[0]], perm[t[1]], perm[t[2]]));
    std::sort(ranks.begin(), ranks.end());
    if (best.empty() || ranks < best) best = ranks;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::uint64_t out = 0;
  for (int r : best) out |= std::uint64_t{1} << r;
  return out;
}

/// Permutations of {0..k-1} as image vectors, all of them.
inline std::vector<std::vector<int>> symmetric_group(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// |Hom(G, S_k)| by trying every tuple of images and composing permutations directly.
inline std::uint64_t homs_into_symmetric(const pi1scan::Presentation& p, int k) {
  const auto elems = symmetric_group(k);
  const std::size_t m = elems.size();
  auto compose = [](const std::vector<int>& x, const std::vector<int>& y) {  // x then y
    std::vector<int> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[static_cast<std::size_t>(x[i])];
    return r;
  };
  auto invert = [](const std::vector<int>& x) {
    std::vector<int> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[static_cast<std::size_t>(x[i])] = static_cast<int>(i);
    return r;
  };
  std::vector<std::size_t> img(static_cast<std::size_t>(p.gens), 0);
  std::vector<int> id(static_cast<std::size_t>(k));
  std::iota(id.begin(), id.end(), 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& w : p.relators) {
      std::vector<int> acc = id;
      for (int x : w) {
        const auto& g = elems[img[static_cast<std::size_t>(std::abs(x) - 1)]];
        acc = compose(acc, x > 0 ? g : invert(g));
      }
      if (acc != id) {
        ok = false;
        break;
      }
    }
    count += ok;
    std::size_t i = 0;
    while (i < img.size() && ++img[i] == m) img[i++] = 0;
    if (i == img.size()) break;
  }
  return count;
}

inline std::uint64_t random_mask(std::mt19937_64& rng, int n, double density) {
  std::bernoulli_distribution coin(density);
  std::uint64_t m = 0;
  for (int r = 0; r < pi1scan::triangle_count(n); ++r)
    if (coin(rng)) m |= std::uint64_t{1} << r;
  return m;
}

inline bool mask_connected_spanning(int n, std::uint64_t mask) {
  const auto tris = triangles(n, mask);
  std::vector<std::pair<int, int>> e;
  unsigned used = 0;
  for (auto t : tris) {
    e.push_back({t[0], t[1]});
    e.push_back({t[1], t[2]});
    used |= 1u << t[0] | 1u << t[1] | 1u << t[2];
  }
  return used == (1u << n) - 1 && connected(used, e);
}

inline pi1scan::Presentation random_presentation(std::mt19937_64& rng, int max_gens, int max_rels, int max_len) {
  std::uniform_int_distribution<int> gd(1, max_gens), rd(0, max_rels), ld(1, max_len);
  pi1scan::Presentation p;
  p.gens = gd(rng);
  std::uniform_int_distribution<int> letter(1, p.gens);
  std::bernoulli_distribution sign(0.5);
  const int r = rd(rng);
  for (int i = 0; i < r; ++i) {
    pi1scan::Word w;
    const int len = ld(rng);
    for (int j = 0; j < len; ++j) w.push_back(sign(rng) ? letter(rng) : -letter(rng));
    p.relators.push_back(w);
  }
  return p;
}

}  // namespace oracle
