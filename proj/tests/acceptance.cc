// End-to-end acceptance checks; one PASS/FAIL line per criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pi1scan/io.hpp"
#include "pi1scan/search.hpp"

using namespace pi1scan;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

std::set<std::string> bases(const std::map<GroupBase, Witness>& m) {
  std::set<std::string> out;
  for (const auto& [b, w] : m) out.insert(b.name());
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
  return "{" + out + "}";
}

// Shared between criteria 4 and 6.
std::optional<Classification> seven;

// ---------------------------------------------------------------------------

void counting(Outcome& o) {
  const char* h3[] = {"1", "1", "1", "2", "5", "34", "2136", "7013320", "1788782616656", "53304527811667897248"};
  for (int n = 0; n <= 9; ++n) {
    BigInt v;
    const double t = timed([&] { v = qian_h3(n); });
    o.require(v == BigInt(h3[n]), "h3(" + std::to_string(n) + ")");
    o.require(t < 1.0, "h3(" + std::to_string(n) + ") under 1 s");
  }
  const int d[] = {2, 3, 6, 20, 168};
  double t4 = 0;
  for (int n = 0; n <= 4; ++n) {
    BigInt v;
    const double t = timed([&] { v = kisielewicz_d(n); });
    o.require(v == d[n], "d(" + std::to_string(n) + ")");
    o.require(t < (n == 4 ? 60.0 : 1.0), "d(" + std::to_string(n) + ") time");
    if (n == 4) t4 = t;
  }
  o.detail << "h3(0..9) and d(0..4) exact; d4 in " << t4 << " s";
}

void enumeration_exact(Outcome& o) {
  std::uint64_t c5 = 0, c6 = 0;
  const double t = timed([&] {
    enumerate_2pure(5, EnumFilter::All, {}, [&](std::uint64_t) { ++c5; });
    enumerate_2pure(6, EnumFilter::All, {}, [&](std::uint64_t) { ++c6; });
  });
  o.require(c5 == 33, "n=5 gives 33");
  o.require(c6 == 2135, "n=6 gives 2135");
  for (int n = 3; n <= 6; ++n)
    o.require(BigInt(count_2pure(n, EnumFilter::All)) + 1 == qian_h3(n), "h3(n) - 1 at n=" + std::to_string(n));
  o.detail << "n=5: " << c5 << ", n=6: " << c6 << " (" << t << " s)";
}

void enumeration_long(Outcome& o) {
  std::uint64_t c = 0;
  const double t = timed([&] { c = count_2pure(7, EnumFilter::SpanningConnected); });
  o.require(c == 7011181, "7011181");
  o.detail << "spanning-connected n=7: " << c << " (" << t << " s)";
}

void seven_vertex_table(Outcome& o) {
  const double t = timed([&] { seven = classify_complexes(7); });
  const Distribution d = distribution(*seven);
  const std::map<std::string, std::uint64_t> table{
      {"Trivial", 5413611}, {"Free(1)", 1264654}, {"Free(2)", 276999}, {"Free(3)", 48944},     {"Free(4)", 6094},
      {"Free(5)", 463},     {"Free(6)", 29},      {"Free(7)", 1},      {"Free(8)", 1},         {"Cyclic(2)", 350},
      {"Cyclic(2)*F1", 31}, {"Cyclic(2)*F2", 3},  {"ZxZ", 1}};
  std::map<std::string, std::uint64_t> got;
  std::uint64_t total = 0;
  for (const auto& [key, count] : d) {
    got[GroupId{key.first, key.second, std::nullopt}.name()] = count;
    total += count;
  }
  int cells = 0;
  for (const auto& [name, want] : table) {
    const bool ok = got.count(name) && got[name] == want;
    cells += ok;
    o.require(ok, name + " = " + std::to_string(want) + " (got " + std::to_string(got.count(name) ? got[name] : 0) + ")");
  }
  o.require(got.size() == table.size(), "no extra cells");
  o.require(total == 7011181, "row sum 7011181");
  const std::size_t nontrivial = pure_from(*seven, SearchMode::Nontrivial).masks.size();
  const std::size_t noncyclic = pure_from(*seven, SearchMode::Noncyclic).masks.size();
  o.require(nontrivial == 1597570, "nontrivial 1597570");
  o.require(noncyclic == 332566, "non-cyclic 332566");
  o.detail << cells << "/13 cells, total " << total << ", nontrivial " << nontrivial << ", non-cyclic " << noncyclic
           << " (" << t << " s)";
}

void six_vertex_uniqueness(Outcome& o) {
  const Classification c = classify_complexes(6);
  std::vector<std::size_t> non_free;
  for (std::size_t i = 0; i < c.masks.size(); ++i)
    if (c.group_of(i).base.kind != BaseKind::Trivial) non_free.push_back(i);
  o.require(non_free.size() == 1, "exactly one non-free complex");
  if (non_free.size() != 1) return;
  const GroupId& g = c.group_of(non_free[0]);
  o.require(g.name() == "Cyclic(2)", "group Cyclic(2)");
  const Complex rp2 = parse_complex("1 2 3;1 2 4;1 5 6;2 5 6;2 4 5;1 3 5;1 4 6;3 4 6;2 3 6;3 4 5");
  const auto rp2_form = canonical_form(TriangleComplex::from_complex(rp2));
  const auto found_form = canonical_form(TriangleComplex::from_mask(6, c.masks[non_free[0]]));
  o.require(rp2_form == found_form, "canonical form equals that of the projective plane");
  o.detail << "1 of " << c.masks.size() << " complexes is non-free: " << g.name()
           << ", canonical form matches the 10-triangle projective plane";
}

void eight_vertex_run(Outcome& o) {
  if (!seven) seven = classify_complexes(7);
  const PureSet pure = pure_from(*seven, SearchMode::Noncyclic);
  o.require(pure.masks.size() == 332566, "Pure(7) non-cyclic has 332566 members");
  GroupSetResult r;
  const double t = timed([&] { r = run_algorithm1(pure, SearchMode::Noncyclic); });
  const std::set<std::string> want{"ZxZ", "Klein", "B3"};
  o.require(bases(r.groups) == want, "groups " + join(want));
  o.require(r.complete(), "all units processed");
  o.require(r.unknowns.empty(), "no unrecognized presentations");
  for (const auto& [b, w] : r.groups) o.require(verify_witness(w.facets(), w.group), "witness for " + b.name());
  o.detail << "groups " << join(bases(r.groups)) << ", |Pure(7)| = " << pure.masks.size() << ", cases " << r.stats.cases
           << " (reported, not asserted), pruned " << r.stats.pruned << " (" << t << " s)";
}

void witnesses(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* file;
    const char* group;
    int vertices, facets;
    std::optional<std::int64_t> order;
  };
  const Case cases[] = {{"b3.json", "B3", 8, 19, std::nullopt},
                        {"d6.json", "D6", 9, 26, 6},
                        {"q8.json", "Q8", 9, 29, 8},
                        {"torus.txt", "ZxZ", 7, 14, std::nullopt}};
  for (const auto& c : cases) {
    const Complex k = read_complex_file(std::string(PI1SCAN_DATA_DIR) + "/" + c.file);
    o.require(k.vertex_count() == c.vertices && static_cast<int>(k.facets().size()) == c.facets,
              std::string(c.file) + " shape");
    const GroupId g = fundamental_group(k);
    o.require(g == GroupId::parse(c.group), std::string(c.file) + " -> " + c.group + " (got " + g.name() + ")");
    o.require(verify_witness(k.facet_lists(), GroupId::parse(c.group)), std::string("verify_witness ") + c.group);
    if (c.order) {
      const auto order = todd_coxeter(tietze_simplify(edge_path_presentation(k)));
      o.require(order == c.order, std::string(c.group) + " coset enumeration order");
    }
  }

  // the complete graph on 8 vertices: 28 edges, 7 in a spanning tree
  std::vector<std::vector<int>> k8;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) k8.push_back({a, b});
  const GroupId g8 = fundamental_group(Complex::from_facets(8, k8));
  o.require(g8.name() == "Free(21)", "K8 gives Free(21) (got " + g8.name() + ")");

  std::mt19937_64 rng(97);
  int max_rank = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<VertexSet> simplices;
    for (int a = 0; a < 8; ++a)
      for (int b = a + 1; b < 8; ++b) simplices.push_back(static_cast<VertexSet>(1u << a | 1u << b));
    for (auto t : oracle::triangles(8, oracle::random_mask(rng, 8, 0.02 + 0.2 * (i % 5) / 4.0)))
      simplices.push_back(static_cast<VertexSet>(1u << t[0] | 1u << t[1] | 1u << t[2]));
    const GroupId g = fundamental_group(Complex::from_simplices(8, simplices));
    const int rank = g.unknown() ? g.fingerprint->abelian.rank : g.free_rank;
    max_rank = std::max(max_rank, rank);
  }
  o.require(max_rank <= 21, "free rank <= 21");
  const double t = seconds_since(t0);
  o.require(t < 60.0, "under 1 minute");
  o.detail << "B3, D6 (order 6), Q8 (order 8), ZxZ recognized; K8 -> " << g8.name()
           << "; max free rank over 300 complete-graph complexes " << max_rank << " (" << t << " s)";
}

void properties(Outcome& o) {
  std::mt19937_64 rng(101);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const Presentation p = oracle::random_presentation(rng, 3, 3, 8);
    const Presentation q = tietze_simplify(p);
    bad += abelianization(p) != abelianization(q) || fingerprint(p) != fingerprint(q);
  }
  o.require(bad == 0, "Tietze invariance on 10^4 presentations");

  bad = 0;
  std::size_t six = 0;
  enumerate_2pure(6, EnumFilter::Connected, {}, [&](std::uint64_t m) {
    const Complex k = TriangleComplex::from_mask(6, m).to_complex();
    bad += homology_h1(k) != abelianization(edge_path_presentation(k));
    ++six;
  });
  int random_seven = 0;
  while (random_seven < 500) {
    const std::uint64_t m = oracle::random_mask(rng, 7, 0.25);
    if (!m) continue;
    const Complex k = TriangleComplex::from_mask(7, m).to_complex();
    if (!is_connected(k)) continue;
    ++random_seven;
    bad += homology_h1(k) != abelianization(edge_path_presentation(k));
  }
  o.require(bad == 0, "H1 equals abelianization");

  bad = 0;
  for (int n = 3; n <= 5; ++n) {
    const auto perms = oracle::symmetric_group(n);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << triangle_count(n)); ++m) {
      const std::uint64_t c = canonical_mask(n, m);
      bad += c != oracle::canonical(n, m);
      for (const auto& p : perms) bad += canonical_mask(n, permute_mask(n, m, p)) != c;
    }
  }
  for (int n = 6; n <= 8; ++n)
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t m = oracle::random_mask(rng, n, 0.3);
      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      bad += canonical_mask(n, permute_mask(n, m, p)) != canonical_mask(n, m);
    }
  o.require(bad == 0, "canonical form permutation invariance");

  const PureSet pure6 = build_pure(6, SearchMode::Nontrivial);
  PureSet sample;
  sample.n = 6;
  for (std::size_t i = 0; i < pure6.masks.size(); i += 100) sample.masks.push_back(pure6.masks[i]);
  const GroupSetResult ref = run_algorithm1_reference(sample, SearchMode::Nontrivial);
  for (int count : {1, 4, 16}) {
    std::set<std::string> groups;
    SearchStats stats;
    for (int i = 0; i < count; ++i) {
      RunOptions opt;
      opt.shard = {i, count, 4};
      const auto part = run_algorithm1(sample, SearchMode::Nontrivial, opt);
      for (const auto& b : bases(part.groups)) groups.insert(b);
      stats += part.stats;
    }
    o.require(groups == bases(ref.groups) && stats == ref.stats, "shard invariance with " + std::to_string(count));
  }

  bool catalog_ok = true;
  try {
    build_catalog();
  } catch (const std::logic_error&) {
    catalog_ok = false;
  }
  o.require(catalog_ok, "catalog collision-free");
  o.detail << "Tietze 10^4, H1 on " << six << " six-vertex + 500 seven-vertex complexes, canonical forms, shards 1/4/16 on "
           << sample.masks.size() << " units of Pure(6), catalog of " << catalog_fingerprints().size() << " groups";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"counting oracles", counting},
      {"enumeration, exact", enumeration_exact},
      {"enumeration, long", enumeration_long},
      {"seven-vertex classification", seven_vertex_table},
      {"six-vertex uniqueness", six_vertex_uniqueness},
      {"eight-vertex non-cyclic run", eight_vertex_run},
      {"witness verification", witnesses},
      {"property suites", properties},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::cout << "criterion " << index << " (" << name << "): " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail.str()
              << std::endl;
  }
  std::cout << "criterion 9 (desk-scale limits): N/A - the unreduced n=8 run, d9/r9 and an exhaustive n=9 "
               "classification are out of reach; the 9-vertex groups are covered by criterion 7"
            << std::endl;
  return failures ? 1 : 0;
}
