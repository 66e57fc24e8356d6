#include "pi1scan/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>

namespace pi1scan {

std::size_t Presentation::total_length() const {
  std::size_t n = 0;
  for (const auto& r : relators) n += r.size();
  return n;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
}

Presentation edge_path_presentation(const Complex& k) {
  if (!is_connected(k)) throw ComplexError("edge-path presentation needs a connected complex");
  const VertexSet verts = k.vertices();
  const int n = k.vertex_count();
  const auto edges = k.simplices_of_dim(1);
  const auto tris = k.simplices_of_dim(2);

  std::vector<std::vector<int>> adj(n);
  for (VertexSet e : edges) {
    int a = std::countr_zero(static_cast<unsigned>(e));
    int b = 31 - std::countl_zero(static_cast<unsigned>(e));
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());

  // generator index per edge rank; 0 marks a tree edge
  std::vector<int> gen(kMaxEdges, 0);
  std::vector<bool> tree(kMaxEdges, false);
  std::vector<bool> seen(n, false);
  const int root = std::countr_zero(static_cast<unsigned>(verts));
  std::deque<int> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        tree[edge_rank(u, v)] = true;
        queue.push_back(v);
      }
  }

  // lexicographic order on (a, b)
  std::vector<std::pair<int, int>> lex;
  for (VertexSet e : edges) {
    int a = std::countr_zero(static_cast<unsigned>(e));
    int b = 31 - std::countl_zero(static_cast<unsigned>(e));
    lex.emplace_back(a, b);
  }
  std::sort(lex.begin(), lex.end());
  Presentation p;
  for (auto [a, b] : lex)
    if (!tree[edge_rank(a, b)]) gen[edge_rank(a, b)] = ++p.gens;

  for (VertexSet t : tris) {
    int v[3], i = 0;
    for (int x = 0; x < kMaxVertices; ++x)
      if (t >> x & 1) v[i++] = x;
    Word w;
    if (int g = gen[edge_rank(v[0], v[1])]) w.push_back(g);
    if (int g = gen[edge_rank(v[1], v[2])]) w.push_back(g);
    if (int g = gen[edge_rank(v[0], v[2])]) w.push_back(-g);
    p.relators.push_back(cyclic_reduce(w));
  }
  return p;
}

namespace {

// Least rotation of w and of its inverse; identifies relators that define the same
// normal closure trivially.
Word cyclic_class(const Word& w) {
  Word best = w;
  for (const Word& base : {w, inverse(w)}) {
    Word rot = base;
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (rot < best) best = rot;
    }
  }
  return best;
}

bool normalize(Presentation& p) {
  bool changed = false;
  std::vector<Word> out;
  std::vector<Word> classes;
  for (auto& r : p.relators) {
    Word c = cyclic_reduce(r);
    if (c.size() != r.size()) changed = true;
    if (c.empty()) {
      changed = true;
      continue;
    }
    Word cls = cyclic_class(c);
    if (std::find(classes.begin(), classes.end(), cls) != classes.end()) {
      changed = true;
      continue;
    }
    classes.push_back(std::move(cls));
    out.push_back(std::move(c));
  }
  p.relators = std::move(out);
  return changed;
}

Word substitute(const Word& w, int g, const Word& image) {
  Word out;
  out.reserve(w.size());
  const Word inv = inverse(image);
  for (int x : w) {
    if (x == g)
      out.insert(out.end(), image.begin(), image.end());
    else if (x == -g)
      out.insert(out.end(), inv.begin(), inv.end());
    else
      out.push_back(x);
  }
  return cyclic_reduce(out);
}

// Drops generator g and renumbers the ones above it.
void remove_generator(Presentation& p, int g) {
  for (auto& r : p.relators)
    for (int& x : r) {
      int a = std::abs(x);
      if (a > g) x += x > 0 ? -1 : 1;
    }
  --p.gens;
}

bool eliminate_generator(Presentation& p) {
  const std::size_t before = p.total_length();
  std::vector<std::size_t> order(p.relators.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.relators[a].size() < p.relators[b].size(); });
  std::vector<int> count(static_cast<std::size_t>(p.gens) + 1);
  for (std::size_t ri : order) {
    const Word& r = p.relators[ri];
    std::fill(count.begin(), count.end(), 0);
    for (int x : r) ++count[static_cast<std::size_t>(std::abs(x))];
    for (int g = 1; g <= p.gens; ++g) {
      if (count[static_cast<std::size_t>(g)] != 1) continue;
      // r = u g^e v  =>  g^e = u^-1 v^-1  =>  g = (v u)^(-e)
      auto pos = std::find_if(r.begin(), r.end(), [g](int x) { return std::abs(x) == g; });
      const int e = *pos > 0 ? 1 : -1;
      Word vu(pos + 1, r.end());
      vu.insert(vu.end(), r.begin(), pos);
      Word image = e > 0 ? inverse(vu) : vu;
      Presentation next;
      next.gens = p.gens;
      std::size_t after = 0;
      for (std::size_t j = 0; j < p.relators.size(); ++j) {
        if (j == ri) continue;
        next.relators.push_back(substitute(p.relators[j], g, image));
        after += next.relators.back().size();
      }
      if (after > before) continue;
      remove_generator(next, g);
      p = std::move(next);
      return true;
    }
  }
  return false;
}

bool find_cyclic(const Word& r, const Word& u, std::size_t& at) {
  const std::size_t n = r.size(), m = u.size();
  if (m > n) return false;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t i = 0;
    while (i < m && r[(s + i) % n] == u[i]) ++i;
    if (i == m) {
      at = s;
      return true;
    }
  }
  return false;
}

bool replace_subword(Presentation& p) {
  for (std::size_t si = 0; si < p.relators.size(); ++si) {
    const Word& s = p.relators[si];
    const std::size_t m = s.size();
    for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
      if (ri == si || p.relators[ri].size() < m / 2 + 1) continue;
      const Word& r = p.relators[ri];
      for (const Word& base : {s, inverse(s)}) {
        for (std::size_t rot = 0; rot < m; ++rot) {
          Word c(base.begin() + static_cast<long>(rot), base.end());
          c.insert(c.end(), base.begin(), base.begin() + static_cast<long>(rot));
          for (std::size_t len = m; len * 2 > m; --len) {
            Word u(c.begin(), c.begin() + static_cast<long>(len));
            std::size_t at = 0;
            if (!find_cyclic(r, u, at)) continue;
            // u = v^-1 where v is the rest of the rotated relator
            Word v(c.begin() + static_cast<long>(len), c.end());
            Word replacement = inverse(v);
            Word out(replacement);
            for (std::size_t i = len; i < r.size(); ++i) out.push_back(r[(at + i) % r.size()]);
            out = cyclic_reduce(out);
            if (out.size() >= r.size()) continue;
            p.relators[ri] = std::move(out);
            return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

Presentation tietze_simplify(Presentation p, long budget) {
  normalize(p);
  while (budget > 0) {
    if (eliminate_generator(p)) {
      --budget;
      normalize(p);
      continue;
    }
    if (replace_subword(p)) {
      --budget;
      normalize(p);
      continue;
    }
    break;
  }
  return p;
}

AbelianInvariants abelianization(const Presentation& p) {
  IntMatrix m;
  m.reserve(p.relators.size());
  for (const auto& r : p.relators) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(p.gens), 0);
    for (int x : r) row[static_cast<std::size_t>(std::abs(x) - 1)] += x > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  return cokernel_invariants(m, p.gens);
}

std::string presentation_key(const Presentation& p) {
  std::string key = std::to_string(p.gens);
  for (const auto& r : p.relators) {
    key += '|';
    for (int x : r) {
      key += std::to_string(x);
      key += ',';
    }
  }
  return key;
}

}  // namespace pi1scan
