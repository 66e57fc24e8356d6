#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pi1scan/enumerate.hpp"
#include "pi1scan/io.hpp"
#include "pi1scan/recognize.hpp"

using namespace pi1scan;

TEST(Words, Reduction) {
  EXPECT_EQ(free_reduce({1, 2, -2, -1, 3}), (Word{3}));
  EXPECT_EQ(cyclic_reduce({-1, 2, 3, 1}), (Word{2, 3}));
  EXPECT_EQ(inverse({1, -2}), (Word{2, -1}));
}

TEST(EdgePath, Examples) {
  const Presentation circle = edge_path_presentation(Complex::from_facets(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(circle.gens, 1);
  EXPECT_TRUE(circle.relators.empty());

  const Presentation disk = edge_path_presentation(Complex::from_facets(3, {{0, 1, 2}}));
  EXPECT_EQ(disk.gens, 1);
  ASSERT_EQ(disk.relators.size(), 1u);
  EXPECT_EQ(abelianization(disk), (AbelianInvariants{0, {}}));

  const Presentation torus = edge_path_presentation(read_complex_file(PI1SCAN_DATA_DIR "/torus.txt"));
  EXPECT_EQ(abelianization(torus), (AbelianInvariants{2, {}}));

  EXPECT_THROW(edge_path_presentation(Complex::from_facets(6, {{0, 1, 2}, {3, 4, 5}})), ComplexError);
}

TEST(EdgePath, GeneratorAndRelatorCounts) {
  std::mt19937_64 rng(41);
  int checked = 0;
  while (checked < 300) {
    const std::uint64_t m = oracle::random_mask(rng, 7, 0.2);
    if (!oracle::mask_connected_spanning(7, m)) continue;
    ++checked;
    const auto tc = TriangleComplex::from_mask(7, m);
    const Presentation p = edge_path_presentation(tc.to_complex());
    EXPECT_EQ(p.gens, static_cast<int>(tc.edges().count()) - 6);
    EXPECT_EQ(static_cast<int>(p.relators.size()), tc.triangle_total());
  }
}

TEST(Tietze, Examples) {
  EXPECT_EQ(tietze_simplify({2, {{2}}}), (Presentation{1, {}}));
  EXPECT_EQ(tietze_simplify({2, {{1, 2, -1, -2}, {2}}}), (Presentation{1, {}}));
  const Presentation rp2 = tietze_simplify(edge_path_presentation(read_complex_file(PI1SCAN_DATA_DIR "/rp2.txt")));
  EXPECT_LE(rp2.gens, 2);
  EXPECT_EQ(abelianization(rp2), (AbelianInvariants{0, {2}}));
}

TEST(Abelianization, Examples) {
  EXPECT_EQ(abelianization({2, {{1, 2, -1, -2}}}), (AbelianInvariants{2, {}}));
  EXPECT_EQ(abelianization({2, {{1, 2, 1, -2, -1, -2}}}), (AbelianInvariants{1, {}}));
  EXPECT_EQ(abelianization({1, {{1, 1, 1, 1}}}), (AbelianInvariants{0, {4}}));
  EXPECT_EQ(abelianization({3, {{1, 1}, {2, 2, 2}}}), (AbelianInvariants{1, {6}}));
}

TEST(Abelianization, SmithFormAgainstDeterminant) {
  // for square nonsingular matrices the product of invariant factors is |det|
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int i = 0; i < 300; ++i) {
    IntMatrix m(3, std::vector<std::int64_t>(3));
    for (auto& row : m)
      for (auto& x : row) x = d(rng);
    const std::int64_t det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    const auto f = invariant_factors(m);
    if (det == 0) {
      EXPECT_LT(f.size(), 3u);
      continue;
    }
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0] * f[1] * f[2], std::abs(det));
    EXPECT_EQ(f[1] % f[0], 0);
    EXPECT_EQ(f[2] % f[1], 0);
  }
}

TEST(Tietze, PreservesAbelianization) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 10000; ++i) {
    const Presentation p = oracle::random_presentation(rng, 5, 4, 10);
    const Presentation q = tietze_simplify(p);
    ASSERT_EQ(abelianization(q), abelianization(p)) << presentation_key(p);
    ASSERT_LE(q.gens, p.gens);
  }
}

TEST(Tietze, PreservesHomCounts) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 10000; ++i) {
    const Presentation p = oracle::random_presentation(rng, 3, 3, 8);
    const Presentation q = tietze_simplify(p);
    ASSERT_EQ(fingerprint(q), fingerprint(p)) << presentation_key(p);
  }
}

TEST(Tietze, LengthDoesNotGrow) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 2000; ++i) {
    Presentation p = oracle::random_presentation(rng, 4, 4, 9);
    for (auto& w : p.relators) w = cyclic_reduce(w);
    EXPECT_LE(tietze_simplify(p).total_length(), p.total_length());
  }
}

TEST(Homology, MatchesAbelianizationOnAllSixVertexComplexes) {
  std::size_t n = 0;
  enumerate_2pure(6, EnumFilter::Connected, {}, [&](std::uint64_t m) {
    ++n;
    const Complex k = TriangleComplex::from_mask(6, m).to_complex();
    ASSERT_EQ(homology_h1(k), abelianization(edge_path_presentation(k))) << m;
  });
  EXPECT_GT(n, 2100u);
}

TEST(Homology, MatchesAbelianizationOnRandomSevenVertexComplexes) {
  std::mt19937_64 rng(61);
  int checked = 0;
  while (checked < 500) {
    std::vector<VertexSet> simplices;
    for (auto t : oracle::triangles(7, oracle::random_mask(rng, 7, 0.25)))
      simplices.push_back(static_cast<VertexSet>(1u << t[0] | 1u << t[1] | 1u << t[2]));
    std::uniform_int_distribution<int> v(0, 6);
    const int a = v(rng), b = v(rng);
    if (a != b) simplices.push_back(static_cast<VertexSet>(1u << a | 1u << b));
    if (simplices.empty()) continue;
    const Complex k = Complex::from_simplices(7, simplices);
    if (!is_connected(k)) continue;
    ++checked;
    EXPECT_EQ(homology_h1(k), abelianization(edge_path_presentation(k)));
  }
}
