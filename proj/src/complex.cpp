#include "pi1scan/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pi1scan {

namespace {

std::string simplex_string(VertexSet s) {
  std::ostringstream os;
  bool first = true;
  for (int v = 0; v < kMaxVertices; ++v)
    if (s >> v & 1) {
      if (!first) os << ' ';
      os << v;
      first = false;
    }
  return os.str();
}

VertexSet full_set(int n) { return static_cast<VertexSet>((1u << n) - 1u); }

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<int> parent;
};

int component_count(VertexSet verts, const std::vector<VertexSet>& sets) {
  UnionFind uf(kMaxVertices);
  for (VertexSet s : sets) {
    int first = std::countr_zero(static_cast<unsigned>(s));
    for (int v = first + 1; v < kMaxVertices; ++v)
      if (s >> v & 1) uf.unite(first, v);
  }
  int comps = 0;
  for (int v = 0; v < kMaxVertices; ++v)
    if ((verts >> v & 1) && uf.find(v) == v) ++comps;
  return comps;
}

// Identifies vertex `from` with `into` and shifts labels above `from` down by one.
Complex contract_vertex(const Complex& k, int into, int from) {
  std::vector<VertexSet> out;
  out.reserve(k.facets().size());
  for (VertexSet f : k.facets()) {
    unsigned s = f;
    if (s >> from & 1) {
      s &= ~(1u << from);
      s |= 1u << into;
    }
    unsigned low = s & ((1u << from) - 1u);
    unsigned high = (s >> (from + 1)) << from;
    out.push_back(static_cast<VertexSet>(low | high));
  }
  return Complex::from_simplices(k.vertex_count() - 1, out);
}

// Relabels the vertices in use to 0..m-1, preserving their order.
Complex compact_labels(const Complex& k) {
  VertexSet used = k.vertices();
  int map[kMaxVertices];
  int m = 0;
  for (int v = 0; v < kMaxVertices; ++v) map[v] = (used >> v & 1) ? m++ : -1;
  std::vector<VertexSet> out;
  for (VertexSet f : k.facets()) {
    VertexSet g = 0;
    for (int v = 0; v < kMaxVertices; ++v)
      if (f >> v & 1) g |= static_cast<VertexSet>(1u << map[v]);
    out.push_back(g);
  }
  return Complex(m, std::move(out));
}

bool is_connected_edges(VertexSet verts, const EdgeBits& edges) {
  if (verts == 0) return false;
  std::vector<VertexSet> sets;
  for (int e = 0; e < kMaxEdges; ++e)
    if (edges.test(e)) {
      auto ev = edge_vertices(e);
      sets.push_back(static_cast<VertexSet>((1u << ev.a) | (1u << ev.b)));
    }
  return component_count(verts, sets) == 1;
}

VertexSet edge_vertex_set(const EdgeBits& edges) {
  VertexSet s = 0;
  for (int e = 0; e < kMaxEdges; ++e)
    if (edges.test(e)) {
      auto ev = edge_vertices(e);
      s |= static_cast<VertexSet>((1u << ev.a) | (1u << ev.b));
    }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Complex

Complex::Complex(int n, std::vector<VertexSet> facets) : n_(n), facets_(std::move(facets)) {
  if (n < 0 || n > kMaxVertices)
    throw ComplexError("vertex count " + std::to_string(n) + " outside 0..16");
  const unsigned allowed = full_set(n);
  for (VertexSet f : facets_) {
    if (f == 0) throw ComplexError("empty facet");
    if (f & ~allowed) throw ComplexError("facet {" + simplex_string(f) + "} uses a label >= n");
  }
  std::sort(facets_.begin(), facets_.end());
  facets_.erase(std::unique(facets_.begin(), facets_.end()), facets_.end());
  for (std::size_t i = 0; i < facets_.size(); ++i)
    for (std::size_t j = 0; j < facets_.size(); ++j)
      if (i != j && (facets_[i] & facets_[j]) == facets_[i])
        throw ComplexError("facet {" + simplex_string(facets_[i]) + "} is contained in facet {" +
                           simplex_string(facets_[j]) + "}");
}

Complex Complex::from_facets(int n, const std::vector<std::vector<int>>& facets) {
  std::vector<VertexSet> masks;
  masks.reserve(facets.size());
  for (const auto& f : facets) {
    VertexSet m = 0;
    for (int v : f) {
      if (v < 0 || v >= n) throw ComplexError("label " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
      if (m >> v & 1) throw ComplexError("repeated label " + std::to_string(v) + " in a facet");
      m |= static_cast<VertexSet>(1u << v);
    }
    masks.push_back(m);
  }
  return Complex(n, std::move(masks));
}

Complex Complex::from_simplices(int n, const std::vector<VertexSet>& simplices) {
  std::vector<VertexSet> s = simplices;
  std::sort(s.begin(), s.end(), [](VertexSet a, VertexSet b) {
    int pa = vertex_set_size(a), pb = vertex_set_size(b);
    return pa != pb ? pa > pb : a < b;
  });
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<VertexSet> keep;
  for (VertexSet x : s) {
    bool dominated = false;
    for (VertexSet y : keep)
      if ((x & y) == x) {
        dominated = true;
        break;
      }
    if (!dominated) keep.push_back(x);
  }
  return Complex(n, std::move(keep));
}

int Complex::dim() const {
  int d = -1;
  for (VertexSet f : facets_) d = std::max(d, vertex_set_size(f) - 1);
  return d;
}

VertexSet Complex::vertices() const {
  VertexSet v = 0;
  for (VertexSet f : facets_) v |= f;
  return v;
}

std::vector<VertexSet> Complex::simplices() const {
  std::vector<VertexSet> out;
  for (VertexSet f : facets_)
    for (unsigned s = f; s; s = (s - 1) & f) out.push_back(static_cast<VertexSet>(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexSet> Complex::simplices_of_dim(int d) const {
  std::vector<VertexSet> out;
  for (VertexSet s : simplices())
    if (vertex_set_size(s) == d + 1) out.push_back(s);
  return out;
}

Complex Complex::skeleton(int d) const {
  std::vector<VertexSet> out;
  for (VertexSet s : simplices())
    if (vertex_set_size(s) <= d + 1) out.push_back(s);
  return from_simplices(n_, out);
}

std::vector<std::vector<int>> Complex::facet_lists() const {
  std::vector<std::vector<int>> out;
  for (VertexSet f : facets_) {
    std::vector<int> vs;
    for (int v = 0; v < kMaxVertices; ++v)
      if (f >> v & 1) vs.push_back(v);
    out.push_back(std::move(vs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// TriangleComplex

TriangleComplex::TriangleComplex(int n, const TriangleBits& triangles) : n_(n), triangles_(triangles) {
  if (n < 0 || n > kMaxVertices)
    throw ComplexError("vertex count " + std::to_string(n) + " outside 0..16");
  for (int t = triangle_count(n); t < kMaxTriangles; ++t)
    if (triangles_.test(t)) throw ComplexError("triangle rank " + std::to_string(t) + " uses a label >= n");
  for (int t = 0; t < triangle_count(n); ++t)
    if (triangles_.test(t)) {
      auto [a, b, c] = triangle_vertices(t);
      edges_.set(edge_rank(a, b));
      edges_.set(edge_rank(a, c));
      edges_.set(edge_rank(b, c));
    }
}

TriangleComplex TriangleComplex::from_mask(int n, std::uint64_t mask) {
  if (n > 8) throw ComplexError("64-bit triangle masks need n <= 8");
  return TriangleComplex(n, TriangleBits(mask));
}

TriangleComplex TriangleComplex::from_complex(const Complex& k) {
  TriangleBits bits;
  for (VertexSet f : k.facets()) {
    if (vertex_set_size(f) != 3) throw ComplexError("complex is not 2-pure: facet {" + simplex_string(f) + "}");
    int v[3], i = 0;
    for (int x = 0; x < kMaxVertices; ++x)
      if (f >> x & 1) v[i++] = x;
    bits.set(triangle_rank(v[0], v[1], v[2]));
  }
  return TriangleComplex(k.vertex_count(), bits);
}

VertexSet TriangleComplex::vertices() const { return edge_vertex_set(edges_); }

std::uint64_t TriangleComplex::mask() const {
  if (n_ > 8) throw ComplexError("64-bit triangle masks need n <= 8");
  return (triangles_ & TriangleBits(~std::uint64_t{0})).to_ullong();
}

Complex TriangleComplex::to_complex() const {
  std::vector<VertexSet> facets;
  for (int t = 0; t < triangle_count(n_); ++t)
    if (triangles_.test(t)) {
      auto [a, b, c] = triangle_vertices(t);
      facets.push_back(static_cast<VertexSet>((1u << a) | (1u << b) | (1u << c)));
    }
  return Complex(n_, std::move(facets));
}

// ---------------------------------------------------------------------------
// Operations

bool is_connected(const Complex& k) {
  if (k.empty()) return false;
  return component_count(k.vertices(), k.facets()) == 1;
}

bool is_connected(const TriangleComplex& k) {
  if (k.triangle_total() == 0) return false;
  return is_connected_edges(k.vertices(), k.edges());
}

std::vector<VertexSet> free_faces(const Complex& k) {
  // sigma is free iff exactly one facet contains it and that facet has one more vertex.
  std::vector<VertexSet> out;
  const auto& facets = k.facets();
  for (VertexSet f : facets) {
    if (vertex_set_size(f) < 2) continue;
    for (int v = 0; v < kMaxVertices; ++v) {
      if (!(f >> v & 1)) continue;
      VertexSet sigma = static_cast<VertexSet>(f & ~(1u << v));
      bool elsewhere = false;
      for (VertexSet g : facets)
        if (g != f && (sigma & g) == sigma) {
          elsewhere = true;
          break;
        }
      if (!elsewhere) out.push_back(sigma);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Complex collapse_free_faces(const Complex& k) {
  Complex cur = k;
  for (;;) {
    auto free = free_faces(cur);
    if (free.empty()) return cur;
    const VertexSet sigma = free.front();
    std::vector<VertexSet> next;
    for (VertexSet f : cur.facets()) {
      if ((sigma & f) == sigma && f != sigma) {
        // the unique coface: keep its other codimension-one faces
        for (int v = 0; v < kMaxVertices; ++v)
          if (sigma >> v & 1) {
            VertexSet face = static_cast<VertexSet>(f & ~(1u << v));
            if (face != 0) next.push_back(face);
          }
      } else {
        next.push_back(f);
      }
    }
    cur = Complex::from_simplices(cur.vertex_count(), next);
  }
}

MaximalEdgeResult remove_maximal_edges(const Complex& k) {
  MaximalEdgeResult res{k, 0};
  for (;;) {
    const auto& facets = res.complex.facets();
    auto it = std::find_if(facets.begin(), facets.end(), [](VertexSet f) { return vertex_set_size(f) == 2; });
    if (it == facets.end()) return res;
    const VertexSet edge = *it;
    const int a = std::countr_zero(static_cast<unsigned>(edge));
    const int b = 31 - std::countl_zero(static_cast<unsigned>(edge));
    std::vector<VertexSet> rest;
    for (VertexSet f : facets)
      if (f != edge) rest.push_back(f);
    rest.push_back(static_cast<VertexSet>(1u << a));
    rest.push_back(static_cast<VertexSet>(1u << b));
    Complex removed = Complex::from_simplices(res.complex.vertex_count(), rest);
    if (is_connected(removed)) {
      res.complex = std::move(removed);
      ++res.removed;
    } else {
      res.complex = contract_vertex(removed, a, b);
    }
  }
}

ReductionReport reduce_to_2pure(const Complex& k) {
  if (k.vertex_count() < 3) throw ComplexError("reduce_to_2pure needs at least 3 vertices");
  if (!is_connected(k)) throw ComplexError("reduce_to_2pure needs a connected complex");
  ReductionReport report;
  Complex cur = collapse_free_faces(k).skeleton(2);
  for (;;) {
    cur = collapse_free_faces(cur);
    auto r = remove_maximal_edges(cur);
    report.free_rank_delta += r.removed;
    if (r.complex == cur) break;
    cur = std::move(r.complex);
  }
  if (cur.dim() < 2) return report;
  report.reduced = TriangleComplex::from_complex(compact_labels(cur));
  return report;
}

EdgeBits free_edges(const TriangleComplex& k) {
  std::array<std::uint8_t, kMaxEdges> count{};
  for (int t = 0; t < triangle_count(k.vertex_count()); ++t)
    if (k.has_triangle(t)) {
      auto [a, b, c] = triangle_vertices(t);
      ++count[edge_rank(a, b)];
      ++count[edge_rank(a, c)];
      ++count[edge_rank(b, c)];
    }
  EdgeBits out;
  for (int e = 0; e < kMaxEdges; ++e)
    if (count[e] == 1) out.set(e);
  return out;
}

namespace {

void check_cone_edges(int n, VertexSet vertices, const EdgeBits& edges, const EdgeBits& free, const EdgeBits& a) {
  if (n + 1 > kMaxVertices) throw ComplexError("cone apex would exceed 16 vertices");
  if ((a & ~edges).any()) throw ComplexError("cone edge set is not contained in the 1-skeleton");
  if ((free & ~a).any()) throw ComplexError("cone edge set misses a free edge");
  if (edge_vertex_set(a) != vertices) throw ComplexError("cone edge set does not cover every vertex");
  if (!is_connected_edges(vertices, a)) throw ComplexError("cone edge set is not connected");
}

}  // namespace

TriangleComplex cone_extend(const TriangleComplex& l, const EdgeBits& a) {
  const int n = l.vertex_count();
  check_cone_edges(n, l.vertices(), l.edges(), free_edges(l), a);
  TriangleBits tri = l.triangles();
  for (int e = 0; e < edge_count(n); ++e)
    if (a.test(e)) {
      auto ev = edge_vertices(e);
      tri.set(triangle_rank(ev.a, ev.b, n));
    }
  return TriangleComplex(n + 1, tri);
}

Complex cone_extend(const Complex& l, const EdgeBits& a) {
  if (l.dim() > 2) throw ComplexError("cone_extend expects a complex of dimension <= 2");
  const int n = l.vertex_count();
  EdgeBits edges, free;
  for (VertexSet s : l.simplices_of_dim(1)) {
    int x = std::countr_zero(static_cast<unsigned>(s));
    int y = 31 - std::countl_zero(static_cast<unsigned>(s));
    edges.set(edge_rank(x, y));
  }
  for (VertexSet s : free_faces(l))
    if (vertex_set_size(s) == 2) {
      int x = std::countr_zero(static_cast<unsigned>(s));
      int y = 31 - std::countl_zero(static_cast<unsigned>(s));
      free.set(edge_rank(x, y));
    }
  check_cone_edges(n, l.vertices(), edges, free, a);
  std::vector<VertexSet> simplices = l.facets();
  for (int e = 0; e < edge_count(n); ++e)
    if (a.test(e)) {
      auto ev = edge_vertices(e);
      simplices.push_back(static_cast<VertexSet>((1u << ev.a) | (1u << ev.b) | (1u << n)));
    }
  return Complex::from_simplices(n + 1, simplices);
}

AbelianInvariants homology_h1(const Complex& k) {
  const auto simplices = k.simplices();
  std::vector<VertexSet> verts, edges, tris;
  for (VertexSet s : simplices) {
    switch (vertex_set_size(s)) {
      case 1: verts.push_back(s); break;
      case 2: edges.push_back(s); break;
      case 3: tris.push_back(s); break;
      default: break;
    }
  }
  auto edge_index = [&](VertexSet e) {
    return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  };
  IntMatrix boundary2;
  boundary2.reserve(tris.size());
  for (VertexSet t : tris) {
    int v[3], i = 0;
    for (int x = 0; x < kMaxVertices; ++x)
      if (t >> x & 1) v[i++] = x;
    std::vector<std::int64_t> row(edges.size(), 0);
    row[edge_index(static_cast<VertexSet>((1u << v[1]) | (1u << v[2])))] += 1;
    row[edge_index(static_cast<VertexSet>((1u << v[0]) | (1u << v[2])))] -= 1;
    row[edge_index(static_cast<VertexSet>((1u << v[0]) | (1u << v[1])))] += 1;
    boundary2.push_back(std::move(row));
  }
  // coker(d2) = Z^(E - rank d2) + torsion; the free part of coker(d2) also contains
  // im(d1), which has rank V - components.
  AbelianInvariants coker = cokernel_invariants(boundary2, static_cast<int>(edges.size()));
  const int comps = component_count(k.vertices(), k.facets());
  coker.rank -= static_cast<int>(verts.size()) - comps;
  return coker;
}

bool split_prune_noncyclic(const TriangleComplex& k) {
  if (k.vertex_count() != 8) throw ComplexError("split_prune_noncyclic needs exactly 8 vertices");
  std::vector<VertexSet> tris;
  for (int t = 0; t < triangle_count(8); ++t)
    if (k.has_triangle(t)) {
      auto [a, b, c] = triangle_vertices(t);
      tris.push_back(static_cast<VertexSet>((1u << a) | (1u << b) | (1u << c)));
    }
  for (unsigned side = 0; side < 256; ++side) {
    if (std::popcount(side) != 4 || !(side & 1u)) continue;  // each split once: side holds vertex 0
    const unsigned other = 0xffu & ~side;
    int in_side = 0, in_other = 0;
    for (VertexSet t : tris) {
      if ((t & side) == t) ++in_side;
      if ((t & other) == t) ++in_other;
    }
    if ((in_side >= 2 && in_other >= 3) || (in_side >= 3 && in_other >= 2)) return true;
  }
  return false;
}

}  // namespace pi1scan
