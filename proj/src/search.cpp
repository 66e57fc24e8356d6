#include "pi1scan/search.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <numeric>
#include <set>
#include <stdexcept>

#include <omp.h>

namespace pi1scan {

SearchMode parse_search_mode(const std::string& s) {
  if (s == "nontrivial") return SearchMode::Nontrivial;
  if (s == "noncyclic") return SearchMode::Noncyclic;
  throw std::invalid_argument("unknown mode '" + s + "' (nontrivial, noncyclic)");
}

std::string to_string(SearchMode mode) { return mode == SearchMode::Nontrivial ? "nontrivial" : "noncyclic"; }

bool interesting(const GroupId& g, SearchMode mode) {
  if (g.unknown()) return true;
  return mode == SearchMode::Nontrivial ? !g.trivial() : !g.cyclic();
}

bool recorded(const GroupId& g, SearchMode mode) {
  if (g.unknown() || g.base.kind == BaseKind::Trivial) return false;
  return mode == SearchMode::Nontrivial || g.base.kind != BaseKind::Cyclic;
}

bool prunable(const GroupId& g, SearchMode mode) {
  if (g.unknown()) return false;
  return mode == SearchMode::Nontrivial ? g.trivial() : g.cyclic();
}

// ---------------------------------------------------------------------------
// kernel

Pi1Kernel::Pi1Kernel(KernelOptions options) : options_(std::move(options)) {}

void Pi1Kernel::load(int n, std::uint64_t triangles) {
  if (n < 1 || n > 8) throw std::out_of_range("Pi1Kernel supports 1 <= n <= 8");
  n_ = n;
  triangles_ = triangles;
  edges_ = 0;
  tri_edges_.clear();
  std::array<int, 28> count{};
  for (std::uint64_t m = triangles; m; m &= m - 1) {
    auto [a, b, c] = triangle_vertices(std::countr_zero(m));
    const std::array<std::uint8_t, 3> e = {static_cast<std::uint8_t>(edge_rank(a, b)),
                                           static_cast<std::uint8_t>(edge_rank(b, c)),
                                           static_cast<std::uint8_t>(edge_rank(a, c))};
    tri_edges_.push_back(e);
    for (auto x : e) {
      edges_ |= 1u << x;
      ++count[x];
    }
  }
  free_edges_ = 0;
  for (int e = 0; e < 28; ++e)
    if (count[static_cast<std::size_t>(e)] == 1) free_edges_ |= 1u << e;
}

namespace {

unsigned edge_vertex_set(std::uint32_t edges) {
  unsigned v = 0;
  for (std::uint32_t m = edges; m; m &= m - 1) {
    auto [a, b] = edge_vertices(std::countr_zero(m));
    v |= 1u << a | 1u << b;
  }
  return v;
}

}  // namespace

bool Pi1Kernel::spans(std::uint32_t edge_set) const {
  const unsigned all = edge_vertex_set(edges_);
  if (edge_vertex_set(edge_set) != all) return false;
  unsigned seen = all & (~all + 1);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint32_t m = edge_set; m; m &= m - 1) {
      auto [a, b] = edge_vertices(std::countr_zero(m));
      const unsigned e = 1u << a | 1u << b;
      if ((seen & e) && (seen & e) != e) {
        seen |= e;
        grew = true;
      }
    }
  }
  return seen == all;
}

std::uint32_t Pi1Kernel::spanning_tree() const {
  // BFS from the smallest vertex, neighbours in increasing order
  const unsigned all = edge_vertex_set(edges_);
  if (!all) return 0;
  std::array<int, 8> queue{};
  int head = 0, tail = 0;
  unsigned seen = all & (~all + 1);
  queue[static_cast<std::size_t>(tail++)] = std::countr_zero(seen);
  std::uint32_t tree = 0;
  while (head < tail) {
    const int u = queue[static_cast<std::size_t>(head++)];
    for (int v = 0; v < n_; ++v) {
      if (v == u || (seen >> v & 1) || !(edges_ >> edge_rank(u, v) & 1)) continue;
      seen |= 1u << v;
      tree |= 1u << edge_rank(u, v);
      queue[static_cast<std::size_t>(tail++)] = v;
    }
  }
  return tree;
}

GroupId Pi1Kernel::pi1() { return evaluate(spanning_tree()); }

GroupId Pi1Kernel::pi1_cone(std::uint32_t cone) { return evaluate(cone); }

GroupId Pi1Kernel::evaluate(std::uint32_t killed) {
  // signed union-find over edge generators; a dead root stands for the identity
  std::array<std::int8_t, 28> parent{}, sign{};
  std::array<bool, 28> dead{};
  for (int e = 0; e < 28; ++e) {
    parent[static_cast<std::size_t>(e)] = static_cast<std::int8_t>(e);
    sign[static_cast<std::size_t>(e)] = 1;
    dead[static_cast<std::size_t>(e)] = killed >> e & 1;
  }
  auto find = [&](int e, int& s) {
    s = 1;
    while (parent[static_cast<std::size_t>(e)] != e) {
      s *= sign[static_cast<std::size_t>(e)];
      e = parent[static_cast<std::size_t>(e)];
    }
    return e;
  };
  struct Small {
    std::array<int, 3> w{};  // signed, 1-based root + 1
    int len = 0;
  };
  auto reduce = [&](const std::array<std::uint8_t, 3>& t) {
    Small out;
    static constexpr std::array<int, 3> dir = {1, 1, -1};
    for (std::size_t i = 0; i < 3; ++i) {
      int s = 1;
      const int r = find(t[i], s);
      if (dead[static_cast<std::size_t>(r)]) continue;
      const int x = (r + 1) * s * dir[i];
      if (out.len > 0 && out.w[static_cast<std::size_t>(out.len - 1)] == -x)
        --out.len;
      else
        out.w[static_cast<std::size_t>(out.len++)] = x;
    }
    while (out.len >= 2 && out.w[0] == -out.w[static_cast<std::size_t>(out.len - 1)]) {
      // cyclic cancellation; with at most three letters this leaves the middle
      if (out.len == 2) {
        out.len = 0;
      } else {
        out.w[0] = out.w[1];
        out.len = 1;
      }
    }
    return out;
  };

  std::vector<std::uint8_t> active(tri_edges_.size(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < tri_edges_.size(); ++i) {
      if (!active[i]) continue;
      const Small w = reduce(tri_edges_[i]);
      if (w.len == 0) {
        active[i] = 0;
        changed = true;
      } else if (w.len == 1) {
        dead[static_cast<std::size_t>(std::abs(w.w[0]) - 1)] = true;
        active[i] = 0;
        changed = true;
      } else if (w.len == 2 && std::abs(w.w[0]) != std::abs(w.w[1])) {
        // x^s y^t = 1  =>  x = y^(-s t)
        const int x = std::abs(w.w[0]) - 1, y = std::abs(w.w[1]) - 1;
        const int s = w.w[0] > 0 ? 1 : -1, t = w.w[1] > 0 ? 1 : -1;
        parent[static_cast<std::size_t>(x)] = static_cast<std::int8_t>(y);
        sign[static_cast<std::size_t>(x)] = static_cast<std::int8_t>(-s * t);
        active[i] = 0;
        changed = true;
      }
    }
  }

  std::array<int, 28> index{};
  Presentation p;
  for (int e = 0; e < 28; ++e)
    if ((edges_ >> e & 1) && parent[static_cast<std::size_t>(e)] == e && !dead[static_cast<std::size_t>(e)])
      index[static_cast<std::size_t>(e)] = ++p.gens;
  for (std::size_t i = 0; i < tri_edges_.size(); ++i) {
    if (!active[i]) continue;
    const Small w = reduce(tri_edges_[i]);
    Word word;
    for (int k = 0; k < w.len; ++k) {
      const int x = w.w[static_cast<std::size_t>(k)];
      const int g = index[static_cast<std::size_t>(std::abs(x) - 1)];
      word.push_back(x > 0 ? g : -g);
    }
    p.relators.push_back(std::move(word));
  }

  last_ = Presentation{};
  if (p.gens == 0) return GroupId{};
  if (p.gens == 1) {
    int m = 0;
    for (const auto& r : p.relators) {
      int sum = 0;
      for (int x : r) sum += x > 0 ? 1 : -1;
      m = std::gcd(m, std::abs(sum));
    }
    last_ = p;
    if (m == 1) return GroupId{};
    if (m == 0) return GroupId{GroupBase{}, 1, std::nullopt};
    return GroupId{GroupBase::cyclic(m), 0, std::nullopt};
  }
  last_ = tietze_simplify(std::move(p), options_.tietze_budget);
  std::string key = presentation_key(last_);
  if (auto it = memo_.find(key); it != memo_.end()) {
    ++hits_;
    return it->second;
  }
  GroupId g = recognize(last_, options_.recognize);
  if (memo_.size() >= options_.memo_limit) memo_.clear();
  memo_.emplace(std::move(key), g);
  return g;
}

std::uint64_t cone_mask(int n, std::uint64_t triangles, std::uint32_t cone) {
  if (n + 1 > 8) throw std::out_of_range("cone_mask needs n + 1 <= 8");
  return triangles | static_cast<std::uint64_t>(cone) << triangle_count(n);
}

GroupId pi1_cone_reference(int n, std::uint64_t triangles, std::uint32_t cone) {
  const TriangleComplex l = TriangleComplex::from_mask(n, triangles);
  return fundamental_group(cone_extend(l, EdgeBits(cone)).to_complex());
}

bool split_prune_mask(std::uint64_t mask) {
  struct Split {
    std::uint64_t side, other;
  };
  static const std::vector<Split> splits = [] {
    std::vector<Split> out;
    for (unsigned side = 0; side < 256; ++side) {
      if (std::popcount(side) != 4 || !(side & 1u)) continue;
      Split s{0, 0};
      for (int r = 0; r < triangle_count(8); ++r) {
        auto [a, b, c] = triangle_vertices(r);
        const unsigned t = 1u << a | 1u << b | 1u << c;
        if ((t & side) == t) s.side |= std::uint64_t{1} << r;
        if ((t & ~side & 0xffu) == t) s.other |= std::uint64_t{1} << r;
      }
      out.push_back(s);
    }
    return out;
  }();
  for (const Split& s : splits) {
    const int x = std::popcount(mask & s.side), y = std::popcount(mask & s.other);
    if ((x >= 2 && y >= 3) || (x >= 3 && y >= 2)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// classification

namespace {

std::string group_key(const GroupId& g) {
  std::string key = g.name();
  if (g.unknown() && g.fingerprint) {
    key += '|' + g.fingerprint->abelian.to_string();
    for (const auto& h : g.fingerprint->hom_counts) key += ',' + h.str();
  }
  return key;
}

// exceptions may not leave an OpenMP region
struct ErrorSlot {
  std::exception_ptr error;
  void capture() {
#pragma omp critical(pi1scan_error)
    if (!error) error = std::current_exception();
  }
  void rethrow() const {
    if (error) std::rethrow_exception(error);
  }
};

}  // namespace

Classification classify_complexes(int n, const Shard& shard, const KernelOptions& options) {
  Classification c;
  c.n = n;
  c.masks = collect_2pure(n, EnumFilter::SpanningConnected, shard);
  const auto count = static_cast<std::int64_t>(c.masks.size());
  c.group_index.assign(c.masks.size(), 0);
  std::vector<std::vector<GroupId>> tables(static_cast<std::size_t>(omp_get_max_threads()));
  ErrorSlot slot;
#pragma omp parallel
  {
    Pi1Kernel kernel(options);
    auto& table = tables[static_cast<std::size_t>(omp_get_thread_num())];
    std::unordered_map<std::string, std::uint32_t> local;
    const auto tag = static_cast<std::uint32_t>(omp_get_thread_num()) << 24;
#pragma omp for schedule(dynamic, 1024)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        kernel.load(n, c.masks[static_cast<std::size_t>(i)]);
        GroupId g = kernel.pi1();
        auto [it, fresh] = local.try_emplace(group_key(g), static_cast<std::uint32_t>(table.size()));
        if (fresh) table.push_back(std::move(g));
        c.group_index[static_cast<std::size_t>(i)] = tag | it->second;
      } catch (...) {
        slot.capture();
      }
    }
  }
  slot.rethrow();
  // merge the per-thread tables in order of first occurrence
  std::unordered_map<std::string, std::uint32_t> global;
  std::vector<std::vector<std::uint32_t>> remap(tables.size());
  for (std::size_t t = 0; t < tables.size(); ++t) remap[t].assign(tables[t].size(), UINT32_MAX);
  for (auto& idx : c.group_index) {
    const std::size_t t = idx >> 24, l = idx & 0xffffffu;
    auto& r = remap[t][l];
    if (r == UINT32_MAX) {
      auto [it, fresh] = global.try_emplace(group_key(tables[t][l]), static_cast<std::uint32_t>(c.groups.size()));
      if (fresh) c.groups.push_back(tables[t][l]);
      r = it->second;
    }
    idx = r;
  }
  return c;
}

Distribution distribution(const Classification& c) {
  std::vector<std::uint64_t> per(c.groups.size(), 0);
  for (auto idx : c.group_index) ++per[idx];
  Distribution d;
  for (std::size_t i = 0; i < c.groups.size(); ++i) d[{c.groups[i].base, c.groups[i].free_rank}] += per[i];
  return d;
}

Distribution classify_all(int n, const KernelOptions& options) { return distribution(classify_complexes(n, {}, options)); }

PureSet pure_from(const Classification& c, SearchMode mode) {
  PureSet p;
  p.n = c.n;
  p.mode = mode;
  std::vector<bool> keep(c.groups.size());
  for (std::size_t i = 0; i < c.groups.size(); ++i) keep[i] = interesting(c.groups[i], mode);
  for (std::size_t i = 0; i < c.masks.size(); ++i)
    if (keep[c.group_index[i]]) p.masks.push_back(c.masks[i]);
  return p;
}

PureSet build_pure(int n, SearchMode mode, const KernelOptions& options) {
  return pure_from(classify_complexes(n, {}, options), mode);
}

// ---------------------------------------------------------------------------
// search

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  complexes += o.complexes;
  cases += o.cases;
  pruned += o.pruned;
  split_skipped += o.split_skipped;
  unknowns += o.unknowns;
  return *this;
}

std::vector<std::vector<int>> Witness::facets() const {
  std::vector<std::vector<int>> out;
  for (std::uint64_t m = mask; m; m &= m - 1) {
    auto [a, b, c] = triangle_vertices(std::countr_zero(m));
    out.push_back({a, b, c});
  }
  return out;
}

namespace {

using Evaluator = std::function<GroupId(std::uint32_t, const Presentation*&)>;

class Extender {
 public:
  Extender(const Pi1Kernel& structure, int n, std::uint64_t l, SearchMode mode, const ExtendOptions& options,
           std::size_t index, Evaluator eval)
      : structure_(structure), n_(n), l_(l), mode_(mode), options_(options), eval_(std::move(eval)) {
    unit_.index = index;
    unit_.mask = l;
    unit_.stats.complexes = 1;
    for (std::uint32_t m = structure.edges() & ~structure.free_edges(); m; m &= m - 1)
      order_.push_back(std::countr_zero(m));
  }

  UnitResult run() {
    const std::uint32_t a0 = structure_.free_edges();
    if (structure_.spans(a0)) {
      auto g = evaluate(a0);
      if (g && options_.prune && prunable(*g, mode_)) {
        ++unit_.stats.pruned;
        return std::move(unit_);
      }
    }
    extend(a0, 0);
    return std::move(unit_);
  }

 private:
  void extend(std::uint32_t a, std::size_t i) {
    if (i == order_.size()) return;
    extend(a, i + 1);
    a |= 1u << order_[i];
    if (structure_.spans(a)) {
      auto g = evaluate(a);
      if (g && options_.prune && prunable(*g, mode_)) {
        ++unit_.stats.pruned;
        return;
      }
    }
    extend(a, i + 1);
  }

  std::optional<GroupId> evaluate(std::uint32_t a) {
    const int n = n_ + 1;
    const bool small = n <= 8;
    const std::uint64_t mask = small ? cone_mask(n_, l_, a) : 0;
    if (options_.split_prune && n == 8 && split_prune_mask(mask)) {
      ++unit_.stats.split_skipped;
      return std::nullopt;
    }
    ++unit_.stats.cases;
    const Presentation* pres = nullptr;
    GroupId g = eval_(a, pres);
    if (g.unknown()) {
      ++unit_.stats.unknowns;
      const std::string key = pres ? presentation_key(*pres) : std::string();
      if (seen_unknown_.insert(key).second) {
        UnknownCase u;
        u.parent_index = unit_.index;
        u.parent_mask = l_;
        u.cone_edges = a;
        u.n = n;
        u.mask = mask;
        if (pres) u.presentation = *pres;
        u.fingerprint = g.fingerprint;
        unit_.unknowns.push_back(std::move(u));
      }
    } else if (recorded(g, mode_) && !unit_.groups.count(g.base)) {
      Witness w;
      w.group = g;
      w.group.fingerprint.reset();
      w.parent_index = unit_.index;
      w.parent_mask = l_;
      w.cone_edges = a;
      w.n = n;
      w.mask = mask;
      unit_.groups.emplace(g.base, w);
    }
    return g;
  }

  const Pi1Kernel& structure_;
  int n_;
  std::uint64_t l_;
  SearchMode mode_;
  ExtendOptions options_;
  Evaluator eval_;
  std::vector<int> order_;
  UnitResult unit_;
  std::set<std::string> seen_unknown_;
};

}  // namespace

UnitResult extend_all(Pi1Kernel& kernel, int n, std::uint64_t l, SearchMode mode, const ExtendOptions& options,
                      std::size_t index) {
  kernel.load(n, l);
  Extender ext(kernel, n, l, mode, options, index, [&kernel](std::uint32_t a, const Presentation*& pres) {
    GroupId g = kernel.pi1_cone(a);
    pres = &kernel.last_presentation();
    return g;
  });
  return ext.run();
}

UnitResult extend_all_reference(int n, std::uint64_t l, SearchMode mode, const ExtendOptions& options,
                                std::size_t index) {
  Pi1Kernel structure;
  structure.load(n, l);
  Presentation last;
  Extender ext(structure, n, l, mode, options, index, [&](std::uint32_t a, const Presentation*& pres) {
    const Complex k = cone_extend(TriangleComplex::from_mask(n, l), EdgeBits(a)).to_complex();
    last = tietze_simplify(edge_path_presentation(k));
    pres = &last;
    return recognize(last);
  });
  return ext.run();
}

void GroupSetResult::merge(const UnitResult& u) {
  for (const auto& [base, w] : u.groups) {
    auto it = groups.find(base);
    if (it == groups.end() || w.parent_index < it->second.parent_index) groups[base] = w;
  }
  stats += u.stats;
  unknowns.insert(unknowns.end(), u.unknowns.begin(), u.unknowns.end());
  ++units_done;
}

namespace {

std::vector<std::size_t> owned_units(const PureSet& pure, const Shard& shard) {
  if (shard.count < 1 || shard.index < 0 || shard.index >= shard.count) throw std::invalid_argument("bad shard spec");
  std::vector<std::size_t> units;
  for (std::size_t i = static_cast<std::size_t>(shard.index); i < pure.masks.size();
       i += static_cast<std::size_t>(shard.count))
    units.push_back(i);
  return units;
}

template <typename Work>
GroupSetResult run_units(const PureSet& pure, SearchMode mode, const RunOptions& options, bool parallel,
                         const Work& work) {
  if (pure.n + 1 > 8) throw std::out_of_range("the search supports n <= 8");
  GroupSetResult res;
  res.n = pure.n + 1;
  res.mode = mode;
  const auto units = owned_units(pure, options.shard);
  res.units_total = units.size();
  std::set<std::size_t> owned(units.begin(), units.end()), done;
  for (const auto& u : options.resume)
    if (owned.count(u.index) && done.insert(u.index).second) res.merge(u);
  std::vector<std::size_t> todo;
  for (auto i : units)
    if (!done.count(i)) todo.push_back(i);
  if (options.max_units && todo.size() > options.max_units) todo.resize(options.max_units);

  const auto count = static_cast<std::int64_t>(todo.size());
  ErrorSlot slot;
#pragma omp parallel if (parallel)
  {
    Pi1Kernel kernel(options.kernel);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < count; ++k) {
      try {
        const std::size_t i = todo[static_cast<std::size_t>(k)];
        UnitResult u = work(kernel, i);
#pragma omp critical(pi1scan_merge)
        {
          res.merge(u);
          if (options.on_unit) options.on_unit(u);
        }
      } catch (...) {
        slot.capture();
      }
    }
  }
  slot.rethrow();
  std::stable_sort(res.unknowns.begin(), res.unknowns.end(),
                   [](const UnknownCase& a, const UnknownCase& b) { return a.parent_index < b.parent_index; });
  return res;
}

}  // namespace

GroupSetResult run_algorithm1(const PureSet& pure, SearchMode mode, const RunOptions& options) {
  return run_units(pure, mode, options, true, [&](Pi1Kernel& kernel, std::size_t i) {
    return extend_all(kernel, pure.n, pure.masks[i], mode, options.extend, i);
  });
}

GroupSetResult run_algorithm1(int n, SearchMode mode, const RunOptions& options) {
  return run_algorithm1(build_pure(n - 1, mode, options.kernel), mode, options);
}

GroupSetResult run_algorithm1_reference(const PureSet& pure, SearchMode mode, const RunOptions& options) {
  return run_units(pure, mode, options, false, [&](Pi1Kernel&, std::size_t i) {
    return extend_all_reference(pure.n, pure.masks[i], mode, options.extend, i);
  });
}

bool verify_witness(const std::vector<std::vector<int>>& facets, const GroupId& expected,
                    const RecognizeOptions& options) {
  int n = 0;
  for (const auto& f : facets)
    for (int v : f) n = std::max(n, v + 1);
  return fundamental_group(Complex::from_facets(n, facets), options) == expected;
}

}  // namespace pi1scan
