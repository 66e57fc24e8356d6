#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pi1scan/io.hpp"
#include "pi1scan/search.hpp"

using namespace pi1scan;

namespace {

const PureSet& pure6() {
  static const PureSet p = build_pure(6, SearchMode::Nontrivial);
  return p;
}

std::uint64_t mask_of(const char* file, int n) {
  Complex k = read_complex_file(file);
  return TriangleComplex::from_complex(Complex::from_simplices(n, k.facets())).mask();
}

std::set<std::string> bases(const std::map<GroupBase, Witness>& m) {
  std::set<std::string> out;
  for (const auto& [b, w] : m) out.insert(b.name());
  return out;
}

// Edge sets of L by brute force: all edges, and those lying in exactly one triangle.
struct Edges {
  std::vector<std::pair<int, int>> all, free, other;
};
Edges edges(int n, std::uint64_t mask) {
  std::map<std::pair<int, int>, int> count;
  for (auto t : oracle::triangles(n, mask)) ++count[{t[0], t[1]}], ++count[{t[0], t[2]}], ++count[{t[1], t[2]}];
  Edges e;
  for (auto [edge, c] : count) {
    e.all.push_back(edge);
    (c == 1 ? e.free : e.other).push_back(edge);
  }
  return e;
}

std::uint32_t bits(const std::vector<std::pair<int, int>>& es) {
  std::uint32_t b = 0;
  for (auto [x, y] : es) b |= 1u << edge_rank(x, y);
  return b;
}

}  // namespace

TEST(Modes, Predicates) {
  const GroupId triv = GroupId::parse("Trivial"), f1 = GroupId::parse("Free(1)"), f2 = GroupId::parse("Free(2)"),
                z2 = GroupId::parse("Cyclic(2)"), z2f = GroupId::parse("Cyclic(2)*F1"), zz = GroupId::parse("ZxZ");
  EXPECT_FALSE(interesting(triv, SearchMode::Nontrivial));
  EXPECT_TRUE(interesting(f1, SearchMode::Nontrivial));
  EXPECT_FALSE(interesting(f1, SearchMode::Noncyclic));
  EXPECT_TRUE(interesting(f2, SearchMode::Noncyclic));
  EXPECT_TRUE(interesting(z2f, SearchMode::Noncyclic));
  EXPECT_FALSE(recorded(f2, SearchMode::Nontrivial));
  EXPECT_TRUE(recorded(z2f, SearchMode::Nontrivial));
  EXPECT_FALSE(recorded(z2f, SearchMode::Noncyclic));
  EXPECT_TRUE(recorded(zz, SearchMode::Noncyclic));
  EXPECT_TRUE(prunable(triv, SearchMode::Nontrivial));
  EXPECT_FALSE(prunable(f1, SearchMode::Nontrivial));
  EXPECT_TRUE(prunable(z2, SearchMode::Noncyclic));
  EXPECT_FALSE(prunable(z2f, SearchMode::Noncyclic));
  GroupId unk;
  unk.base.kind = BaseKind::Unknown;
  EXPECT_TRUE(interesting(unk, SearchMode::Noncyclic));
  EXPECT_FALSE(prunable(unk, SearchMode::Nontrivial));
}

TEST(Kernel, AgreesWithReferencePipeline) {
  std::mt19937_64 rng(71);
  Pi1Kernel kernel;
  int checked = 0;
  while (checked < 400) {
    const std::uint64_t m = oracle::random_mask(rng, 7, 0.3);
    if (!oracle::mask_connected_spanning(7, m)) continue;
    kernel.load(7, m);
    const GroupId direct = kernel.pi1();
    EXPECT_EQ(direct, fundamental_group(TriangleComplex::from_mask(7, m).to_complex())) << m;
    // random spanning cone edge set
    std::uint32_t a = kernel.free_edges() | kernel.spanning_tree();
    for (int e = 0; e < 21; ++e)
      if ((kernel.edges() >> e & 1) && rng() % 3 == 0) a |= 1u << e;
    ASSERT_TRUE(kernel.spans(a));
    EXPECT_EQ(kernel.pi1_cone(a), pi1_cone_reference(7, m, a)) << m << ' ' << a;
    ++checked;
  }
}

TEST(Kernel, SpansMatchesBruteForce) {
  std::mt19937_64 rng(73);
  Pi1Kernel kernel;
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t m = oracle::random_mask(rng, 6, 0.3);
    if (!oracle::mask_connected_spanning(6, m)) continue;
    kernel.load(6, m);
    const auto e = edges(6, m);
    EXPECT_EQ(kernel.edges(), bits(e.all));
    EXPECT_EQ(kernel.free_edges(), bits(e.free));
    for (int k = 0; k < 20; ++k) {
      std::vector<std::pair<int, int>> sub;
      for (auto x : e.all)
        if (rng() % 2) sub.push_back(x);
      unsigned touched = 0;
      for (auto [x, y] : sub) touched |= 1u << x | 1u << y;
      const bool expect = touched == 0b111111 && oracle::connected(touched, sub);
      EXPECT_EQ(kernel.spans(bits(sub)), expect);
    }
  }
}

TEST(Pure, FiveVertexGroupsAreFree) {
  const Classification c = classify_complexes(5);
  for (std::size_t i = 0; i < c.masks.size(); ++i) {
    const GroupId& g = c.group_of(i);
    EXPECT_EQ(g.base.kind, BaseKind::Trivial) << g.name();
  }
  const PureSet p = build_pure(5, SearchMode::Nontrivial);
  EXPECT_GT(p.masks.size(), 0u);
  EXPECT_LT(p.masks.size(), c.masks.size());
}

TEST(Classify, SixVertices) {
  const Distribution d = classify_all(6);
  std::uint64_t total = 0, non_free = 0;
  for (const auto& [key, count] : d) {
    total += count;
    if (key.first.kind != BaseKind::Trivial) {
      non_free += count;
      EXPECT_EQ(key.first, GroupBase::cyclic(2));
      EXPECT_EQ(key.second, 0);
    }
  }
  EXPECT_EQ(total, count_2pure(6, EnumFilter::SpanningConnected));
  EXPECT_EQ(non_free, 1u);
}

TEST(Extend, UnprunedCaseCountIsSpanningSubsetCount) {
  std::vector<std::uint64_t> ls = {mask_of(PI1SCAN_DATA_DIR "/rp2.txt", 6), pure6().masks[0], pure6().masks[100]};
  for (std::uint64_t l : ls) {
    const auto e = edges(6, l);
    std::uint64_t spanning = 0;
    for (std::uint32_t s = 0; s < (1u << e.other.size()); ++s) {
      auto set = e.free;
      for (std::size_t i = 0; i < e.other.size(); ++i)
        if (s >> i & 1) set.push_back(e.other[i]);
      unsigned touched = 0;
      for (auto [x, y] : set) touched |= 1u << x | 1u << y;
      spanning += touched == 0b111111 && oracle::connected(touched, set);
    }
    Pi1Kernel kernel;
    const UnitResult u = extend_all(kernel, 7, l, SearchMode::Nontrivial, {false, false});
    EXPECT_EQ(u.stats.cases, spanning);
    EXPECT_EQ(u.stats.pruned, 0u);
  }
}

TEST(Extend, ProjectivePlaneGivesOnlyCyclicTwo) {
  Pi1Kernel kernel;
  const std::uint64_t l = mask_of(PI1SCAN_DATA_DIR "/rp2.txt", 6);
  for (bool prune : {true, false}) {
    const UnitResult u = extend_all(kernel, 7, l, SearchMode::Nontrivial, {prune, false});
    EXPECT_EQ(bases(u.groups), std::set<std::string>{"Cyclic(2)"});
  }
}

TEST(Extend, TorusGroupsLieInTheEightVertexList) {
  Pi1Kernel kernel;
  const std::uint64_t l = mask_of(PI1SCAN_DATA_DIR "/torus.txt", 7);
  const UnitResult u = extend_all(kernel, 8, l, SearchMode::Nontrivial);
  const std::set<std::string> allowed{"ZxZ", "Klein", "B3", "Cyclic(2)", "Cyclic(3)", "Cyclic(4)"};
  EXPECT_TRUE(bases(u.groups).count("ZxZ"));
  for (const auto& b : bases(u.groups)) EXPECT_TRUE(allowed.count(b)) << b;
  EXPECT_TRUE(u.unknowns.empty());
}

TEST(Extend, KernelAgreesWithReference) {
  for (std::size_t i = 0; i < pure6().masks.size(); i += 40) {
    Pi1Kernel kernel;
    const std::uint64_t l = pure6().masks[i];
    for (auto mode : {SearchMode::Nontrivial, SearchMode::Noncyclic}) {
      const UnitResult a = extend_all(kernel, 7, l, mode, {}, i);
      const UnitResult b = extend_all_reference(7, l, mode, {}, i);
      EXPECT_EQ(a.stats, b.stats);
      EXPECT_EQ(bases(a.groups), bases(b.groups));
    }
  }
}

// Cones over supersets of a pruned edge set give quotients, so they stay trivial
// (resp. cyclic). Each pruned sample is checked against one random descendant.
TEST(Extend, PruningIsSound) {
  std::mt19937_64 rng(79);
  Pi1Kernel kernel;
  int samples = 0, reference_checks = 0;
  for (int iter = 0; samples < 10000; ++iter) {
    const std::uint64_t l = pure6().masks[rng() % pure6().masks.size()];
    kernel.load(6, l);
    std::uint32_t a = kernel.free_edges() | kernel.spanning_tree();
    for (int e = 0; e < 15; ++e)
      if ((kernel.edges() >> e & 1) && rng() % 2) a |= 1u << e;
    const auto mode = iter % 2 ? SearchMode::Nontrivial : SearchMode::Noncyclic;
    if (!prunable(kernel.pi1_cone(a), mode)) continue;
    ++samples;
    std::uint32_t b = a;
    for (int e = 0; e < 15; ++e)
      if ((kernel.edges() >> e & 1) && rng() % 2) b |= 1u << e;
    const GroupId g = samples % 20 == 0 ? (++reference_checks, pi1_cone_reference(6, l, b)) : kernel.pi1_cone(b);
    ASSERT_TRUE(prunable(g, mode)) << l << ' ' << a << ' ' << b << ' ' << g.name();
  }
  EXPECT_EQ(reference_checks, 500);
}

TEST(Run, SevenVertexGroups) {
  const GroupSetResult r = run_algorithm1(pure6(), SearchMode::Nontrivial);
  EXPECT_EQ(bases(r.groups), (std::set<std::string>{"Cyclic(2)", "ZxZ"}));
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(r.stats.unknowns, 0u);
  for (const auto& [b, w] : r.groups) EXPECT_TRUE(verify_witness(w.facets(), w.group)) << b.name();
}

TEST(Run, ShardInvariance) {
  PureSet sample;
  sample.n = 6;
  for (std::size_t i = 0; i < pure6().masks.size(); i += 100) sample.masks.push_back(pure6().masks[i]);
  const GroupSetResult ref = run_algorithm1_reference(sample, SearchMode::Nontrivial);
  for (int count : {1, 4, 16}) {
    GroupSetResult merged;
    for (int i = 0; i < count; ++i) {
      RunOptions o;
      o.shard = {i, count, 4};
      const GroupSetResult part = run_algorithm1(sample, SearchMode::Nontrivial, o);
      merged.stats += part.stats;
      for (const auto& [b, w] : part.groups) merged.groups.emplace(b, w);
    }
    EXPECT_EQ(bases(merged.groups), bases(ref.groups)) << count;
    EXPECT_EQ(merged.stats, ref.stats) << count;
  }
}

TEST(Run, ResumeSkipsFinishedUnits) {
  RunOptions first;
  first.max_units = 50;
  std::vector<UnitResult> done;
  first.on_unit = [&](const UnitResult& u) { done.push_back(u); };
  const GroupSetResult partial = run_algorithm1(pure6(), SearchMode::Nontrivial, first);
  EXPECT_FALSE(partial.complete());
  EXPECT_EQ(done.size(), 50u);

  RunOptions second;
  second.resume = done;
  std::size_t fresh = 0;
  second.on_unit = [&](const UnitResult&) { ++fresh; };
  const GroupSetResult full = run_algorithm1(pure6(), SearchMode::Nontrivial, second);
  EXPECT_EQ(fresh, pure6().masks.size() - 50);
  EXPECT_TRUE(full.complete());
  EXPECT_EQ(full.stats, run_algorithm1(pure6(), SearchMode::Nontrivial).stats);
}

TEST(Witness, RoundTripsThroughFacets) {
  EXPECT_TRUE(verify_witness(read_complex_file(PI1SCAN_DATA_DIR "/torus.txt").facet_lists(), GroupId::parse("ZxZ")));
  EXPECT_FALSE(verify_witness(read_complex_file(PI1SCAN_DATA_DIR "/torus.txt").facet_lists(), GroupId::parse("Klein")));
}
