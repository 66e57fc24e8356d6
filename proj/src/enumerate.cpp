#include "pi1scan/enumerate.hpp"

#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace pi1scan {

// ---------------------------------------------------------------------------
// counting

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (n == 0) {
    f(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, f);
    cur.pop_back();
  }
}

std::int64_t lcm3(std::int64_t a, std::int64_t b, std::int64_t c) { return std::lcm(std::lcm(a, b), c); }

}  // namespace

BigInt qian_h3(int n) {
  if (n < 0 || n > 16) throw std::out_of_range("qian_h3: n must be in 0..16");
  BigInt factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  BigInt total = 0;
  std::vector<int> cur;
  partitions(n, n, cur, [&](const std::vector<int>& p) {
    const std::size_t q = p.size();
    std::int64_t tau = 0;
    for (int pi : p) tau += ((pi - 1) * (pi - 2) + 5) / 6;
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i + 1; j < q; ++j)
        for (std::size_t h = j + 1; h < q; ++h)
          tau += static_cast<std::int64_t>(p[i]) * p[j] * p[h] / lcm3(p[i], p[j], p[h]);
    std::int64_t twice = 0;
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i + 1; j < q; ++j) {
        const int l = std::lcm(p[i], p[j]);
        const int parity_differs = ((l / p[i]) % 2) != ((l / p[j]) % 2) ? 1 : 0;
        twice += static_cast<std::int64_t>(std::gcd(p[i], p[j])) * (p[i] + p[j] - 2 + parity_differs);
      }
    if (twice % 2 != 0) throw std::logic_error("qian_h3: odd pair sum");
    tau += twice / 2;

    // n! / (prod i^alpha_i alpha_i!)
    BigInt z = 1;
    std::array<int, 17> alpha{};
    for (int pi : p) ++alpha[static_cast<std::size_t>(pi)];
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= alpha[static_cast<std::size_t>(i)]; ++k) z *= i * k;
    total += (factorial / z) * (BigInt(1) << static_cast<unsigned>(tau));
  });
  if (total % factorial != 0) throw std::logic_error("qian_h3: sum not divisible by n!");
  return total / factorial;
}

BigInt kisielewicz_d(int n) {
  if (n < 0) throw std::out_of_range("kisielewicz_d: negative n");
  if (n > 4) throw std::out_of_range("kisielewicz_d: formula infeasible for n > 4 (2^(2^n) terms)");
  const std::uint64_t top = std::uint64_t{1} << (1u << n);  // 2^(2^n)
  const std::uint64_t last = (std::uint64_t{1} << n) - 1;   // 2^n - 1
  auto b = [](std::uint64_t i, std::uint64_t k) { return static_cast<std::int64_t>((k >> i) - 2 * (k >> (i + 1))); };
  BigInt total = 0;
  for (std::uint64_t k = 1; k <= top; ++k) {
    std::int64_t outer = 1;
    for (std::uint64_t j = 1; j <= last && outer; ++j)
      for (std::uint64_t i = 0; i < j && outer; ++i) {
        std::int64_t inner = 1;
        const int mmax = i == 0 ? 0 : std::bit_width(i) - 1;
        for (int m = 0; m <= mmax; ++m) {
          const std::int64_t bmi = b(static_cast<std::uint64_t>(m), i), bmj = b(static_cast<std::uint64_t>(m), j);
          inner *= 1 - bmi + bmi * bmj;
        }
        outer *= 1 - b(i, k) * b(j, k) * inner;
      }
    total += outer;
  }
  return total;
}

CountKind parse_count_kind(const std::string& s) {
  if (s == "dedekind") return CountKind::Dedekind;
  if (s == "reduced_dedekind" || s == "reduced-dedekind") return CountKind::ReducedDedekind;
  if (s == "h3") return CountKind::H3;
  throw std::invalid_argument("unknown count kind '" + s + "' (dedekind, reduced_dedekind, h3)");
}

BigInt count_reference(CountKind kind, int n) {
  static const std::array<const char*, 10> dedekind = {
      "2", "3", "6", "20", "168", "7581", "7828354", "2414682040998", "56130437228687557907788",
      "286386577668298411128469151667598498812366"};
  static const std::array<const char*, 10> reduced = {
      "2", "3", "5", "10", "30", "210", "16353", "490013148", "1392195548889993358",
      "789204635842035040527740846300252680"};
  static const std::array<const char*, 10> h3 = {
      "1", "1", "1", "2", "5", "34", "2136", "7013320", "1788782616656", "53304527811667897248"};
  if (n < 0 || n > 9) throw std::out_of_range("no reference value for n = " + std::to_string(n) + " (0..9)");
  const auto& table = kind == CountKind::Dedekind ? dedekind : kind == CountKind::ReducedDedekind ? reduced : h3;
  return BigInt(table[static_cast<std::size_t>(n)]);
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

constexpr int kCanonMax = 10;

constexpr auto kPairRank = [] {
  std::array<std::array<std::uint8_t, kCanonMax>, kCanonMax> t{};
  for (int a = 0; a < kCanonMax; ++a)
    for (int b = 0; b < kCanonMax; ++b) t[a][b] = a == b ? 0 : static_cast<std::uint8_t>(edge_rank(a, b));
  return t;
}();

using u128 = unsigned __int128;

// Relabeling search. New label k receives old vertex sigma[k]; the image triangles with
// largest label k form block k, ranks [C(k,3), C(k+1,3)).
struct Search {
  int n = 0;
  std::array<std::uint64_t, kCanonMax> link{};  // link[v]: edge ranks xy with xyv a triangle
  std::array<int, kCanonMax> sigma{};

  template <typename Mask>
  void load(int n_, Mask mask) {
    n = n_;
    link.fill(0);
    for (int r = 0; r < triangle_count(n); ++r)
      if (static_cast<std::uint64_t>(mask >> r) & 1) {
        auto [a, b, c] = triangle_vertices(r);
        link[a] |= std::uint64_t{1} << kPairRank[b][c];
        link[b] |= std::uint64_t{1} << kPairRank[a][c];
        link[c] |= std::uint64_t{1} << kPairRank[a][b];
      }
  }

  std::uint64_t block(int k) const {
    const std::uint64_t lk = link[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
    std::uint64_t out = 0;
    int bit = 0;
    for (int b = 1; b < k; ++b) {
      const auto& row = kPairRank[static_cast<std::size_t>(sigma[static_cast<std::size_t>(b)])];
      for (int a = 0; a < b; ++a, ++bit)
        out |= (lk >> row[static_cast<std::size_t>(sigma[static_cast<std::size_t>(a)])] & 1) << bit;
    }
    return out;
  }

  // x precedes y: the first differing triangle belongs to x
  static bool better(std::uint64_t x, std::uint64_t y) {
    const std::uint64_t d = x ^ y;
    return d != 0 && (x & d & (~d + 1)) != 0;
  }
};

struct CanonicityCheck : Search {
  std::array<std::uint64_t, kCanonMax> own{};

  // false as soon as a relabeling beats the identity
  bool dfs(int k, unsigned used) {
    for (int v = 0; v < n; ++v) {
      if (used >> v & 1) continue;
      sigma[static_cast<std::size_t>(k)] = v;
      const std::uint64_t b = block(k);
      const std::uint64_t o = own[static_cast<std::size_t>(k)];
      if (b != o) {
        if (better(b, o)) return false;
        continue;
      }
      if (k + 1 < n && !dfs(k + 1, used | 1u << v)) return false;
    }
    return true;
  }
};

struct BestImage : Search {
  std::array<std::uint64_t, kCanonMax> best{};
  std::array<bool, kCanonMax> known{};

  void dfs(int k, unsigned used) {
    for (int v = 0; v < n; ++v) {
      if (used >> v & 1) continue;
      sigma[static_cast<std::size_t>(k)] = v;
      const std::uint64_t b = block(k);
      const auto ku = static_cast<std::size_t>(k);
      if (known[ku]) {
        if (better(best[ku], b)) continue;
        if (b != best[ku]) {
          best[ku] = b;
          for (std::size_t j = ku + 1; j < kCanonMax; ++j) known[j] = false;
        }
      } else {
        best[ku] = b;
        known[ku] = true;
        for (std::size_t j = ku + 1; j < kCanonMax; ++j) known[j] = false;
      }
      if (k + 1 < n) dfs(k + 1, used | 1u << v);
    }
  }

  u128 run(int n_, u128 mask) {
    load(n_, mask);
    known.fill(false);
    dfs(0, 0);
    u128 out = 0;
    for (int k = 2; k < n; ++k) out |= static_cast<u128>(best[static_cast<std::size_t>(k)]) << triangle_count(k);
    return out;
  }
};

}  // namespace

CanonicalForm canonical_form(const TriangleComplex& k) {
  const int n = k.vertex_count();
  if (n > kCanonMax) throw std::out_of_range("canonical_form supports n <= 10");
  u128 mask = 0;
  for (int r = 0; r < triangle_count(n); ++r)
    if (k.has_triangle(r)) mask |= static_cast<u128>(1) << r;
  BestImage search;
  const u128 best = search.run(n, mask);
  CanonicalForm out;
  out.n = n;
  for (int r = 0; r < triangle_count(n); ++r)
    if (static_cast<std::uint64_t>(best >> r) & 1) out.mask.set(static_cast<std::size_t>(r));
  return out;
}

std::uint64_t canonical_mask(int n, std::uint64_t mask) {
  if (n > 8) throw std::out_of_range("canonical_mask supports n <= 8");
  BestImage search;
  return static_cast<std::uint64_t>(search.run(n, mask));
}

bool is_canonical(int n, std::uint64_t mask) {
  CanonicityCheck check;
  check.load(n, mask);
  for (int k = 0; k < n; ++k) {
    const int lo = triangle_count(k), width = triangle_count(k + 1) - lo;
    check.own[static_cast<std::size_t>(k)] = width == 0 ? 0 : (mask >> lo) & ((std::uint64_t{1} << width) - 1);
  }
  return check.dfs(0, 0);
}

std::uint64_t permute_mask(int n, std::uint64_t mask, const std::vector<int>& perm) {
  std::uint64_t out = 0;
  for (int r = 0; r < triangle_count(n); ++r)
    if (mask >> r & 1) {
      auto [a, b, c] = triangle_vertices(r);
      out |= std::uint64_t{1} << triangle_rank(perm[a], perm[b], perm[c]);
    }
  return out;
}

// ---------------------------------------------------------------------------
// generation

EnumFilter parse_enum_filter(const std::string& s) {
  if (s == "all") return EnumFilter::All;
  if (s == "connected") return EnumFilter::Connected;
  if (s == "spanning-connected" || s == "spanning_connected" || s == "spanning") return EnumFilter::SpanningConnected;
  throw std::invalid_argument("unknown filter '" + s + "' (all, connected, spanning-connected)");
}

bool is_connected_mask(int n, std::uint64_t mask) {
  if (mask == 0) return false;
  std::array<unsigned, 8> adj{};
  unsigned used = 0;
  for (int r = 0; r < triangle_count(n); ++r)
    if (mask >> r & 1) {
      auto [a, b, c] = triangle_vertices(r);
      const unsigned t = 1u << a | 1u << b | 1u << c;
      adj[a] |= t;
      adj[b] |= t;
      adj[c] |= t;
      used |= t;
    }
  unsigned seen = used & (~used + 1), frontier = seen;
  while (frontier) {
    unsigned next = 0;
    for (unsigned f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == used;
}

bool passes(EnumFilter filter, int n, std::uint64_t mask) {
  switch (filter) {
    case EnumFilter::All: return mask != 0;
    case EnumFilter::Connected: return is_connected_mask(n, mask);
    case EnumFilter::SpanningConnected: {
      unsigned used = 0;
      for (std::uint64_t m = mask; m; m &= m - 1) {
        auto [a, b, c] = triangle_vertices(std::countr_zero(m));
        used |= 1u << a | 1u << b | 1u << c;
      }
      return used == (1u << n) - 1 && is_connected_mask(n, mask);
    }
  }
  return false;
}

namespace {

void check_n(int n) {
  if (n < 3 || n > 8) throw std::out_of_range("enumeration supports 3 <= n <= 8");
}

int top_rank(std::uint64_t mask) { return mask == 0 ? -1 : 63 - std::countl_zero(mask); }

// children add a triangle above the current largest one
template <typename Visit>
void grow(int n, std::uint64_t mask, const Visit& visit) {
  const int total = triangle_count(n);
  for (int t = top_rank(mask) + 1; t < total; ++t) {
    const std::uint64_t child = mask | std::uint64_t{1} << t;
    if (is_canonical(n, child)) visit(child);
  }
}

void subtree(int n, EnumFilter filter, std::uint64_t mask, const MaskSink& sink) {
  if (passes(filter, n, mask)) sink(mask);
  grow(n, mask, [&](std::uint64_t child) { subtree(n, filter, child, sink); });
}

struct WorkPlan {
  std::vector<std::uint64_t> shallow;  // single nodes above the units
  std::vector<std::uint64_t> units;    // subtree roots
};

// Subtree sizes grow with the number of triangles still available above the top one,
// so units are cut where that room is small.
WorkPlan plan(int n, const Shard& shard) {
  if (shard.count < 1 || shard.index < 0 || shard.index >= shard.count) throw std::invalid_argument("bad shard spec");
  WorkPlan p;
  const int total = triangle_count(n);
  const auto count = static_cast<std::uint64_t>(shard.count);
  std::uint64_t dealt = 0, shallow = 0;
  std::function<void(std::uint64_t)> walk = [&](std::uint64_t mask) {
    const int depth = std::popcount(mask);
    if (depth >= shard.split_depth && total - 1 - top_rank(mask) <= shard.split_room) {
      if (static_cast<int>(dealt++ % count) == shard.index) p.units.push_back(mask);
      return;
    }
    if (depth > 0 && static_cast<int>(shallow++ % count) == shard.index) p.shallow.push_back(mask);
    grow(n, mask, walk);
  };
  walk(0);
  return p;
}

}  // namespace

void enumerate_2pure(int n, EnumFilter filter, const Shard& shard, const MaskSink& sink) {
  check_n(n);
  const WorkPlan p = plan(n, shard);
  for (std::uint64_t m : p.shallow)
    if (passes(filter, n, m)) sink(m);
  for (std::uint64_t m : p.units) subtree(n, filter, m, sink);
}

void enumerate_2pure_serial(int n, EnumFilter filter, const MaskSink& sink) {
  check_n(n);
  grow(n, 0, [&](std::uint64_t child) { subtree(n, filter, child, sink); });
}

std::uint64_t count_2pure(int n, EnumFilter filter, const Shard& shard) {
  check_n(n);
  const WorkPlan p = plan(n, shard);
  std::uint64_t count = 0;
  for (std::uint64_t m : p.shallow) count += passes(filter, n, m);
  const auto units = static_cast<std::int64_t>(p.units.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : count)
  for (std::int64_t i = 0; i < units; ++i) {
    std::uint64_t local = 0;
    subtree(n, filter, p.units[static_cast<std::size_t>(i)], [&](std::uint64_t) { ++local; });
    count += local;
  }
  return count;
}

std::vector<std::uint64_t> collect_2pure(int n, EnumFilter filter, const Shard& shard) {
  check_n(n);
  const WorkPlan p = plan(n, shard);
  std::vector<std::uint64_t> out;
  for (std::uint64_t m : p.shallow)
    if (passes(filter, n, m)) out.push_back(m);
  std::vector<std::vector<std::uint64_t>> parts(p.units.size());
  const auto units = static_cast<std::int64_t>(p.units.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < units; ++i) {
    auto& part = parts[static_cast<std::size_t>(i)];
    subtree(n, filter, p.units[static_cast<std::size_t>(i)], [&](std::uint64_t m) { part.push_back(m); });
  }
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace pi1scan
