#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "pi1scan/complex.hpp"
#include "pi1scan/finite_group.hpp"

namespace pi1scan {

// ---------------------------------------------------------------------------
// counting

/// Isomorphism classes of 3-uniform hypergraphs on n vertices (the empty one included),
/// via the cycle-index partition sum. 0 <= n <= 16.
BigInt qian_h3(int n);

/// Dedekind number by the explicit antichain summation; 0 <= n <= 4.
BigInt kisielewicz_d(int n);

enum class CountKind { Dedekind, ReducedDedekind, H3 };
CountKind parse_count_kind(const std::string& s);

/// Published values: n = 0..9 for every kind. Throws std::out_of_range otherwise.
BigInt count_reference(CountKind kind, int n);

// ---------------------------------------------------------------------------
// canonical form

/// Triangle mask that is extremal over all relabelings: read in increasing rank order,
/// the canonical mask has the earliest possible triangles, so its sorted rank list is
/// lexicographically least.
struct CanonicalForm {
  int n = 0;
  TriangleBits mask;
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.n == b.n && a.mask == b.mask; }
};

/// Branch-and-bound over partial relabelings; n <= 10.
CanonicalForm canonical_form(const TriangleComplex& k);

/// Canonical mask for n <= 8.
std::uint64_t canonical_mask(int n, std::uint64_t mask);
bool is_canonical(int n, std::uint64_t mask);

/// Image of `mask` under the relabeling v -> perm[v].
std::uint64_t permute_mask(int n, std::uint64_t mask, const std::vector<int>& perm);

// ---------------------------------------------------------------------------
// generation

enum class EnumFilter { All, Connected, SpanningConnected };
EnumFilter parse_enum_filter(const std::string& s);

bool is_connected_mask(int n, std::uint64_t mask);
bool passes(EnumFilter filter, int n, std::uint64_t mask);

/// Shard `index` (0-based) of `count`. A node of the generation tree becomes a work
/// unit once it has at least `split_depth` triangles and at most `split_room` candidate
/// triangles above its largest one; units are dealt round-robin to shards, and so are
/// the nodes above them.
struct Shard {
  int index = 0;
  int count = 1;
  int split_depth = 4;
  int split_room = 16;
};

using MaskSink = std::function<void(std::uint64_t)>;

/// Orderly generation of nonempty triangle sets on n vertices, one canonical
/// representative per isomorphism class, in depth-first order. 3 <= n <= 8.
void enumerate_2pure(int n, EnumFilter filter, const Shard& shard, const MaskSink& sink);

/// Plain recursive generator without sharding; reference for tests.
void enumerate_2pure_serial(int n, EnumFilter filter, const MaskSink& sink);

/// Count of the classes passing `filter`, with the work units of `shard` processed by
/// OpenMP threads.
std::uint64_t count_2pure(int n, EnumFilter filter, const Shard& shard = {});

/// Collects all classes passing `filter` in shard order; deterministic for any thread
/// count.
std::vector<std::uint64_t> collect_2pure(int n, EnumFilter filter, const Shard& shard = {});

}  // namespace pi1scan
