#pragma once

#include <bitset>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pi1scan/abelian.hpp"
#include "pi1scan/combinatorics.hpp"

namespace pi1scan {

class ComplexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite simplicial complex on vertex labels 0..n-1, stored by its facets.
///
/// Facets form an antichain and are kept sorted by their vertex bitmask, which is the
/// colex order on vertex tuples. Labels that occur in no facet are simply absent from
/// the complex; `vertex_count()` is the label range.
class Complex {
 public:
  Complex() = default;

  /// Throws ComplexError on out-of-range labels, empty facets or a non-antichain.
  Complex(int n, std::vector<VertexSet> facets);

  static Complex from_facets(int n, const std::vector<std::vector<int>>& facets);

  /// Keeps only the maximal members of `simplices` (any family of nonempty sets).
  static Complex from_simplices(int n, const std::vector<VertexSet>& simplices);

  int vertex_count() const { return n_; }
  const std::vector<VertexSet>& facets() const { return facets_; }
  bool empty() const { return facets_.empty(); }
  int dim() const;
  VertexSet vertices() const;

  /// All nonempty simplices (downward closure of the facets), ascending by bitmask.
  std::vector<VertexSet> simplices() const;
  std::vector<VertexSet> simplices_of_dim(int d) const;

  /// Subcomplex of simplices of dimension <= d.
  Complex skeleton(int d) const;

  std::vector<std::vector<int>> facet_lists() const;

  friend bool operator==(const Complex&, const Complex&) = default;

 private:
  int n_ = 0;
  std::vector<VertexSet> facets_;
};

using TriangleBits = std::bitset<kMaxTriangles>;
using EdgeBits = std::bitset<kMaxEdges>;

/// 2-pure complex as a set of triangles, indexed by colex rank.
class TriangleComplex {
 public:
  TriangleComplex() = default;
  TriangleComplex(int n, const TriangleBits& triangles);

  static TriangleComplex from_mask(int n, std::uint64_t mask);  // n <= 8
  /// Throws ComplexError unless `k` is 2-pure (every facet is a triangle).
  static TriangleComplex from_complex(const Complex& k);

  int vertex_count() const { return n_; }
  const TriangleBits& triangles() const { return triangles_; }
  const EdgeBits& edges() const { return edges_; }
  int triangle_total() const { return static_cast<int>(triangles_.count()); }
  bool has_triangle(int rank) const { return triangles_.test(rank); }
  VertexSet vertices() const;

  std::uint64_t mask() const;  // requires n <= 8
  Complex to_complex() const;

  friend bool operator==(const TriangleComplex& a, const TriangleComplex& b) {
    return a.n_ == b.n_ && a.triangles_ == b.triangles_;
  }

 private:
  int n_ = 0;
  TriangleBits triangles_;
  EdgeBits edges_;
};

struct ReductionReport {
  /// Empty when the complex reduced to a graph (its fundamental group is then free).
  std::optional<TriangleComplex> reduced;
  int free_rank_delta = 0;

  bool graph_like() const { return !reduced.has_value(); }
};

bool is_connected(const Complex& k);
bool is_connected(const TriangleComplex& k);

/// Simplices that are proper faces of exactly one simplex, ascending by bitmask.
std::vector<VertexSet> free_faces(const Complex& k);

/// Elementary collapses, always at the colex-first free face, until none is left.
Complex collapse_free_faces(const Complex& k);

/// Deletes maximal edges; an edge whose removal disconnects is contracted instead.
/// The result carries the number of deleted (non-disconnecting) edges.
struct MaximalEdgeResult {
  Complex complex;
  int removed = 0;
};
MaximalEdgeResult remove_maximal_edges(const Complex& k);

/// Reduces a connected complex to a connected 2-pure one with
/// pi1(k) = pi1(reduced) * F_delta. Throws ComplexError when n < 3 or k is disconnected.
ReductionReport reduce_to_2pure(const Complex& k);

/// Edges lying in exactly one triangle.
EdgeBits free_edges(const TriangleComplex& k);

/// Cone over the edge set `a` with apex labelled n. `a` must lie in the 1-skeleton,
/// be connected, cover every vertex and contain all free edges; throws ComplexError
/// otherwise.
TriangleComplex cone_extend(const TriangleComplex& l, const EdgeBits& a);
/// Same for a complex of dimension <= 2 whose maximal edges may be coned off too.
Complex cone_extend(const Complex& l, const EdgeBits& a);

/// H1(k; Z) from Smith normal forms of the simplicial boundary maps.
AbelianInvariants homology_h1(const Complex& k);

/// True when some split of the 8 vertices into two 4-sets has >= 2 triangles spanned on
/// one side and >= 3 on the other; pi1 is then cyclic up to a free factor.
bool split_prune_noncyclic(const TriangleComplex& k);

}  // namespace pi1scan
