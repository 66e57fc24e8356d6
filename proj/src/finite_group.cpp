#include "pi1scan/finite_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace pi1scan {

FiniteGroupTable FiniteGroupTable::from_permutations(std::string name, const std::vector<std::vector<int>>& generators) {
  if (generators.empty()) throw std::logic_error("no generators for " + name);
  const std::size_t k = generators.front().size();
  using Perm = std::vector<int>;
  Perm id(k);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  auto compose = [](const Perm& a, const Perm& b) {  // apply a, then b
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[static_cast<std::size_t>(a[i])];
    return c;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : generators) {
      Perm c = compose(elems[i], g);
      if (!index.count(c)) {
        index.emplace(c, static_cast<int>(elems.size()));
        elems.push_back(std::move(c));
      }
    }
  if (elems.size() > 255) throw std::logic_error(name + " is too large for a byte table");
  FiniteGroupTable t;
  t.name_ = std::move(name);
  t.order_ = static_cast<int>(elems.size());
  t.table_.resize(elems.size() * elems.size());
  t.inverse_.resize(elems.size());
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      int c = index.at(compose(elems[a], elems[b]));
      t.table_[a * elems.size() + b] = static_cast<std::uint8_t>(c);
      if (c == 0) t.inverse_[a] = static_cast<std::uint8_t>(b);
    }
  t.verify();
  return t;
}

FiniteGroupTable FiniteGroupTable::cyclic(int m) {
  std::vector<int> shift(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) shift[static_cast<std::size_t>(i)] = (i + 1) % m;
  return from_permutations("Z" + std::to_string(m), {shift});
}

int FiniteGroupTable::elements_with_order_dividing(int m) const {
  int count = 0;
  for (int g = 0; g < order_; ++g) {
    int x = 0;
    for (int i = 0; i < m; ++i) x = multiply(x, g);
    if (x == 0) ++count;
  }
  return count;
}

void FiniteGroupTable::verify() const {
  for (int a = 0; a < order_; ++a) {
    if (multiply(0, a) != a || multiply(a, 0) != a) throw std::logic_error(name_ + ": identity axiom fails");
    if (multiply(a, inverse(a)) != 0 || multiply(inverse(a), a) != 0) throw std::logic_error(name_ + ": inverse axiom fails");
    for (int b = 0; b < order_; ++b)
      for (int c = 0; c < order_; ++c)
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
          throw std::logic_error(name_ + ": associativity fails");
  }
}

const std::vector<FiniteGroupTable>& battery() {
  static const std::vector<FiniteGroupTable> groups = [] {
    std::vector<FiniteGroupTable> g;
    g.push_back(FiniteGroupTable::from_permutations("S3", {{1, 2, 0}, {1, 0, 2}}));
    g.push_back(FiniteGroupTable::from_permutations("D4", {{1, 2, 3, 0}, {0, 3, 2, 1}}));
    // regular representation of the quaternions on {1,i,j,k,-1,-i,-j,-k}
    g.push_back(FiniteGroupTable::from_permutations("Q8", {{1, 4, 7, 2, 5, 0, 3, 6}, {2, 3, 4, 5, 6, 7, 0, 1}}));
    g.push_back(FiniteGroupTable::from_permutations("A4", {{1, 2, 0, 3}, {1, 0, 3, 2}}));
    g.push_back(FiniteGroupTable::from_permutations("S4", {{1, 2, 3, 0}, {1, 0, 2, 3}}));
    g.push_back(FiniteGroupTable::from_permutations("A5", {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}));
    g.push_back(FiniteGroupTable::cyclic(5));
    g.push_back(FiniteGroupTable::cyclic(7));
    g.push_back(FiniteGroupTable::cyclic(8));
    g.push_back(FiniteGroupTable::cyclic(9));
    return g;
  }();
  return groups;
}

BigInt count_homs(const Presentation& p, const FiniteGroupTable& t, std::uint64_t work_cap) {
  // generators in order of first use; each relator is checked at the depth where its
  // last generator gets assigned
  std::vector<int> level(static_cast<std::size_t>(p.gens) + 1, -1);
  std::vector<int> order;
  for (const auto& r : p.relators)
    for (int x : r) {
      int g = std::abs(x);
      if (level[static_cast<std::size_t>(g)] < 0) {
        level[static_cast<std::size_t>(g)] = static_cast<int>(order.size());
        order.push_back(g);
      }
    }
  const int depth = static_cast<int>(order.size());
  std::vector<std::vector<const Word*>> checks(static_cast<std::size_t>(depth));
  for (const auto& r : p.relators) {
    if (r.empty()) continue;
    int last = 0;
    for (int x : r) last = std::max(last, level[static_cast<std::size_t>(std::abs(x))]);
    checks[static_cast<std::size_t>(last)].push_back(&r);
  }

  // A relator checked at depth d in which the generator g assigned there occurs as a
  // single block g^k (k != 0) forces g^k = u^-1 v^-1, so only the k-th roots of that
  // element need to be tried.
  struct Solver {
    const Word* relator = nullptr;
    std::size_t begin = 0, end = 0;  // the block of g
    int power = 0;
  };
  std::vector<Solver> solver(static_cast<std::size_t>(depth));
  for (int d = 0; d < depth; ++d)
    for (const Word* r : checks[static_cast<std::size_t>(d)]) {
      const int g = order[static_cast<std::size_t>(d)];
      std::size_t first = r->size(), last = 0;
      int count = 0;
      for (std::size_t i = 0; i < r->size(); ++i)
        if (std::abs((*r)[i]) == g) {
          first = std::min(first, i);
          last = i;
          ++count;
        }
      bool block = static_cast<std::size_t>(count) == last - first + 1;
      for (std::size_t i = first; block && i <= last; ++i) block = (*r)[i] == (*r)[first];
      if (!block) continue;
      solver[static_cast<std::size_t>(d)] = {r, first, last + 1, (*r)[first] > 0 ? count : -count};
      break;
    }
  // roots[k][y] = elements x with x^k = y
  std::map<int, std::vector<std::vector<int>>> roots;
  for (const auto& s : solver)
    if (s.relator && !roots.count(s.power)) {
      auto& table = roots[s.power];
      table.resize(static_cast<std::size_t>(t.order()));
      for (int x = 0; x < t.order(); ++x) {
        int y = 0;
        const int step = s.power > 0 ? x : t.inverse(x);
        for (int i = 0; i < std::abs(s.power); ++i) y = t.multiply(y, step);
        table[static_cast<std::size_t>(y)].push_back(x);
      }
    }
  std::vector<int> all(static_cast<std::size_t>(t.order()));
  std::iota(all.begin(), all.end(), 0);

  std::vector<int> image(static_cast<std::size_t>(p.gens) + 1, 0);
  std::uint64_t work = 0;
  std::uint64_t found = 0;
  auto letter = [&](int s) {
    int v = image[static_cast<std::size_t>(std::abs(s))];
    return s > 0 ? v : t.inverse(v);
  };
  auto eval = [&](const Word& w) {
    int x = 0;
    for (int s : w) x = t.multiply(x, letter(s));
    return x;
  };
  auto candidates = [&](std::size_t d) -> const std::vector<int>& {
    const Solver& s = solver[d];
    if (!s.relator) return all;
    const Word& r = *s.relator;
    int u = 0, v = 0;
    for (std::size_t i = 0; i < s.begin; ++i) u = t.multiply(u, letter(r[i]));
    for (std::size_t i = s.end; i < r.size(); ++i) v = t.multiply(v, letter(r[i]));
    return roots.at(s.power)[static_cast<std::size_t>(t.multiply(t.inverse(u), t.inverse(v)))];
  };
  if (depth == 0) {
    found = 1;
    for (const auto& r : p.relators)
      if (!r.empty()) found = 0;  // a nonempty relator always mentions a generator
  }
  // iterative odometer over images of the used generators
  std::vector<const std::vector<int>*> pool(static_cast<std::size_t>(depth), nullptr);
  std::vector<std::size_t> next(static_cast<std::size_t>(depth), 0);
  int d = 0;
  if (depth > 0) pool[0] = &candidates(0);
  while (d >= 0 && depth > 0) {
    const std::size_t du = static_cast<std::size_t>(d);
    if (next[du] >= pool[du]->size()) {
      next[du] = 0;
      --d;
      continue;
    }
    image[static_cast<std::size_t>(order[du])] = (*pool[du])[next[du]++];
    if (++work > work_cap) throw ResourceCapExceeded("homomorphism count exceeded the work cap into " + t.name());
    bool ok = true;
    for (const Word* r : checks[du]) {
      if (r == solver[du].relator) continue;
      if (++work > work_cap) throw ResourceCapExceeded("homomorphism count exceeded the work cap into " + t.name());
      if (eval(*r) != 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (d + 1 == depth) {
      ++found;
    } else {
      ++d;
      pool[static_cast<std::size_t>(d)] = &candidates(static_cast<std::size_t>(d));
    }
  }
  BigInt total = found;
  for (int g = 1; g <= p.gens; ++g)
    if (level[static_cast<std::size_t>(g)] < 0) total *= t.order();
  return total;
}

namespace {

class CosetTable {
 public:
  CosetTable(int gens, std::int64_t limit) : cols_(2 * gens), limit_(limit) { add_row(); }

  bool overflow() const { return overflow_; }
  std::int64_t defined() const { return static_cast<std::int64_t>(parent_.size()); }
  bool live(std::int64_t c) const { return parent_[static_cast<std::size_t>(c)] == c; }
  std::int64_t live_count() const {
    std::int64_t n = 0;
    for (std::int64_t c = 0; c < defined(); ++c) n += live(c);
    return n;
  }

  static int column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  static int inverse_column(int col) { return col ^ 1; }

  std::int64_t& entry(std::int64_t c, int col) { return table_[static_cast<std::size_t>(c * cols_ + col)]; }

  // defines a new coset d with c.col = d; false once the limit is reached
  bool define(std::int64_t c, int col) {
    if (defined() >= limit_) {
      overflow_ = true;
      return false;
    }
    std::int64_t d = add_row();
    entry(c, col) = d;
    entry(d, inverse_column(col)) = c;
    return true;
  }

  void scan_and_fill(std::int64_t c, const Word& w) {
    if (w.empty()) return;
    std::int64_t f = c, b = c;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, column(w[static_cast<std::size_t>(i)])) >= 0) {
        f = entry(f, column(w[static_cast<std::size_t>(i)]));
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, inverse_column(column(w[static_cast<std::size_t>(j)]))) >= 0) {
        b = entry(b, inverse_column(column(w[static_cast<std::size_t>(j)])));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        int col = column(w[static_cast<std::size_t>(i)]);
        entry(f, col) = b;
        entry(b, inverse_column(col)) = f;
        return;
      }
      if (!define(f, column(w[static_cast<std::size_t>(i)]))) return;
    }
  }

  void fill_row(std::int64_t c) {
    for (int col = 0; col < cols_ && live(c); ++col)
      if (entry(c, col) < 0 && !define(c, col)) return;
  }

 private:
  std::int64_t add_row() {
    std::int64_t id = defined();
    parent_.push_back(id);
    table_.resize(table_.size() + static_cast<std::size_t>(cols_), -1);
    return id;
  }

  std::int64_t rep(std::int64_t k) {
    std::int64_t r = k;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(k)] != r) {
      std::int64_t next = parent_[static_cast<std::size_t>(k)];
      parent_[static_cast<std::size_t>(k)] = r;
      k = next;
    }
    return r;
  }

  void merge(std::int64_t k, std::int64_t l, std::vector<std::int64_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[static_cast<std::size_t>(l)] = k;
    queue.push_back(l);
  }

  void coincidence(std::int64_t a, std::int64_t b) {
    std::vector<std::int64_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::int64_t e = queue[qi];
      for (int col = 0; col < cols_; ++col) {
        std::int64_t f = entry(e, col);
        if (f < 0) continue;
        int icol = inverse_column(col);
        if (entry(f, icol) == e) entry(f, icol) = -1;
        std::int64_t e1 = rep(e), f1 = rep(f);
        if (entry(e1, col) >= 0) {
          merge(f1, entry(e1, col), queue);
        } else if (entry(f1, icol) >= 0) {
          merge(e1, entry(f1, icol), queue);
        } else {
          entry(e1, col) = f1;
          entry(f1, icol) = e1;
        }
      }
    }
  }

  int cols_;
  std::int64_t limit_;
  bool overflow_ = false;
  std::vector<std::int64_t> table_;
  std::vector<std::int64_t> parent_;
};

}  // namespace

std::optional<std::int64_t> todd_coxeter(const Presentation& p, std::int64_t max_cosets) {
  if (p.gens == 0) return 1;
  CosetTable table(p.gens, max_cosets);
  for (const auto& r : p.relators) table.scan_and_fill(0, r);
  for (std::int64_t c = 0; c < table.defined(); ++c) {
    if (table.overflow()) return std::nullopt;
    if (!table.live(c)) continue;
    for (const auto& r : p.relators) {
      table.scan_and_fill(c, r);
      if (table.overflow()) return std::nullopt;
      if (!table.live(c)) break;
    }
    if (table.live(c)) table.fill_row(c);
  }
  if (table.overflow()) return std::nullopt;
  return table.live_count();
}

}  // namespace pi1scan
