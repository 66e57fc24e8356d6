#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <utility>

namespace pi1scan {

inline constexpr int kMaxVertices = 16;
inline constexpr int kMaxEdges = 120;       // C(16, 2)
inline constexpr int kMaxTriangles = 560;   // C(16, 3)

/// Simplex stored as a bitmask over vertex labels 0..15.
using VertexSet = std::uint16_t;

constexpr std::int64_t binomial(int n, int k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr int edge_count(int n) { return static_cast<int>(binomial(n, 2)); }
constexpr int triangle_count(int n) { return static_cast<int>(binomial(n, 3)); }

// Colex ranks. These do not depend on the vertex count, so the edges (triangles)
// of a complex on n vertices are exactly the ranks below C(n,2) (C(n,3)).
constexpr int edge_rank(int a, int b) {
  if (a > b) std::swap(a, b);
  return static_cast<int>(binomial(b, 2)) + a;
}

constexpr int triangle_rank(int a, int b, int c) {
  // sort three
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return static_cast<int>(binomial(c, 3) + binomial(b, 2)) + a;
}

struct EdgeVerts {
  std::uint8_t a, b;
};
struct TriangleVerts {
  std::uint8_t a, b, c;
};

namespace detail {
constexpr std::array<EdgeVerts, kMaxEdges> make_edge_table() {
  std::array<EdgeVerts, kMaxEdges> t{};
  for (int b = 1; b < kMaxVertices; ++b)
    for (int a = 0; a < b; ++a) t[edge_rank(a, b)] = {std::uint8_t(a), std::uint8_t(b)};
  return t;
}
constexpr std::array<TriangleVerts, kMaxTriangles> make_triangle_table() {
  std::array<TriangleVerts, kMaxTriangles> t{};
  for (int c = 2; c < kMaxVertices; ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a)
        t[triangle_rank(a, b, c)] = {std::uint8_t(a), std::uint8_t(b), std::uint8_t(c)};
  return t;
}
}  // namespace detail

inline constexpr auto kEdgeTable = detail::make_edge_table();
inline constexpr auto kTriangleTable = detail::make_triangle_table();

constexpr EdgeVerts edge_vertices(int rank) { return kEdgeTable[rank]; }
constexpr TriangleVerts triangle_vertices(int rank) { return kTriangleTable[rank]; }

constexpr int vertex_set_size(VertexSet s) { return std::popcount(static_cast<unsigned>(s)); }

}  // namespace pi1scan
