#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pi1scan/enumerate.hpp"
#include "pi1scan/recognize.hpp"

namespace pi1scan {

enum class SearchMode { Nontrivial, Noncyclic };
SearchMode parse_search_mode(const std::string& s);
std::string to_string(SearchMode mode);

/// Membership in Pure(n): pi1 nontrivial (resp. not cyclic). Unknown groups are kept.
bool interesting(const GroupId& g, SearchMode mode);
/// Whether the search records the base of `g`: not free (resp. not cyclic up to a free
/// factor). Unknown groups are reported separately.
bool recorded(const GroupId& g, SearchMode mode);
/// Whether extensions of a complex with group `g` can be skipped: only quotients of a
/// trivial (resp. cyclic) group remain. Unknown never prunes.
bool prunable(const GroupId& g, SearchMode mode);

struct KernelOptions {
  long tietze_budget = kDefaultTietzeBudget;
  RecognizeOptions recognize;
  std::size_t memo_limit = 1 << 20;
};

/// Fundamental groups of 2-pure complexes on at most 8 vertices, given as triangle masks.
///
/// Every edge of L is a generator and every triangle a relator; a connected spanning set
/// of edges is declared trivial (a spanning tree for pi1(L), the coned edges for
/// pi1(L u CA), where the star of the apex is the tree). Relators of length <= 2 are
/// folded by signed union-find before Tietze simplification, and recognition results
/// are cached by simplified presentation. Not thread-safe; use one per thread.
class Pi1Kernel {
 public:
  explicit Pi1Kernel(KernelOptions options = {});

  /// Loads L; n <= 8.
  void load(int n, std::uint64_t triangles);
  int vertex_count() const { return n_; }
  std::uint32_t edges() const { return edges_; }
  std::uint32_t free_edges() const { return free_edges_; }
  /// True when the edge set is connected and touches every vertex of L.
  bool spans(std::uint32_t edge_set) const;
  std::uint32_t spanning_tree() const;

  /// pi1(L).
  GroupId pi1();
  /// pi1(L u CA); `cone` must span.
  GroupId pi1_cone(std::uint32_t cone);

  /// Simplified presentation behind the most recent result (empty if it was read off
  /// directly).
  const Presentation& last_presentation() const { return last_; }
  std::uint64_t cache_hits() const { return hits_; }

 private:
  GroupId evaluate(std::uint32_t killed);

  KernelOptions options_;
  int n_ = 0;
  std::uint64_t triangles_ = 0;
  std::uint32_t edges_ = 0;
  std::uint32_t free_edges_ = 0;
  std::vector<std::array<std::uint8_t, 3>> tri_edges_;  // edge ranks ab, bc, ac
  Presentation last_;
  std::unordered_map<std::string, GroupId> memo_;
  std::uint64_t hits_ = 0;
};

/// Reference pipeline for pi1(L u CA) through the general Complex code path.
GroupId pi1_cone_reference(int n, std::uint64_t triangles, std::uint32_t cone);

/// Triangle mask of L u CA on n + 1 vertices (apex n).
std::uint64_t cone_mask(int n, std::uint64_t triangles, std::uint32_t cone);

/// 4+4 split test on a triangle mask of 8 vertices.
bool split_prune_mask(std::uint64_t mask);

// ---------------------------------------------------------------------------
// classification of all complexes on n vertices

/// Every spanning-connected 2-pure complex on n vertices with its group.
struct Classification {
  int n = 0;
  std::vector<std::uint64_t> masks;
  std::vector<std::uint32_t> group_index;  // into `groups`
  std::vector<GroupId> groups;             // distinct results, in order of first sight

  const GroupId& group_of(std::size_t i) const { return groups[group_index[i]]; }
};

Classification classify_complexes(int n, const Shard& shard = {}, const KernelOptions& options = {});

using DistributionKey = std::pair<GroupBase, int>;  // base, free rank
using Distribution = std::map<DistributionKey, std::uint64_t>;

Distribution distribution(const Classification& c);
Distribution classify_all(int n, const KernelOptions& options = {});

struct PureSet {
  int n = 0;
  SearchMode mode = SearchMode::Nontrivial;
  std::vector<std::uint64_t> masks;
};

PureSet pure_from(const Classification& c, SearchMode mode);
PureSet build_pure(int n, SearchMode mode, const KernelOptions& options = {});

// ---------------------------------------------------------------------------
// cone-extension search

struct SearchStats {
  std::uint64_t complexes = 0;   // members of Pure(n-1) processed
  std::uint64_t cases = 0;       // groups computed
  std::uint64_t pruned = 0;      // extension subtrees cut
  std::uint64_t split_skipped = 0;
  std::uint64_t unknowns = 0;

  SearchStats& operator+=(const SearchStats& o);
  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct Witness {
  GroupId group;
  std::size_t parent_index = 0;  // position of L in Pure(n-1)
  std::uint64_t parent_mask = 0;
  std::uint32_t cone_edges = 0;
  int n = 0;                     // vertices of the witness complex
  std::uint64_t mask = 0;        // triangles of L u CA

  std::vector<std::vector<int>> facets() const;
};

struct UnknownCase {
  std::size_t parent_index = 0;
  std::uint64_t parent_mask = 0;
  std::uint32_t cone_edges = 0;
  int n = 0;
  std::uint64_t mask = 0;
  Presentation presentation;
  std::optional<Fingerprint> fingerprint;
};

/// Outcome of EXTEND for one L.
struct UnitResult {
  std::size_t index = 0;
  std::uint64_t mask = 0;
  std::map<GroupBase, Witness> groups;
  SearchStats stats;
  std::vector<UnknownCase> unknowns;  // one per distinct presentation
};

struct ExtendOptions {
  bool prune = true;
  bool split_prune = false;  // n = 8 cones only
};

/// Recursive cone extension of L (n vertices) over edge sets containing all free edges
/// and a spanning tree. Non-free edges are branched on in increasing colex order.
UnitResult extend_all(Pi1Kernel& kernel, int n, std::uint64_t l, SearchMode mode, const ExtendOptions& options = {},
                      std::size_t index = 0);

/// Same search, every group through the reference pipeline.
UnitResult extend_all_reference(int n, std::uint64_t l, SearchMode mode, const ExtendOptions& options = {},
                                std::size_t index = 0);

struct GroupSetResult {
  int n = 0;
  SearchMode mode = SearchMode::Nontrivial;
  std::map<GroupBase, Witness> groups;
  SearchStats stats;
  std::vector<UnknownCase> unknowns;
  std::size_t units_done = 0;
  std::size_t units_total = 0;  // units owned by this shard

  void merge(const UnitResult& u);
  bool complete() const { return units_done == units_total; }
};

struct RunOptions {
  Shard shard;
  ExtendOptions extend;
  KernelOptions kernel;
  /// Units already finished (e.g. read from a checkpoint); skipped and merged.
  std::vector<UnitResult> resume;
  /// Called under a lock once per finished unit.
  std::function<void(const UnitResult&)> on_unit;
  /// Stop after this many new units (0 = no limit); used to interrupt runs.
  std::size_t max_units = 0;
};

/// Union of extend_all over the members of `pure` owned by the shard, in parallel.
GroupSetResult run_algorithm1(const PureSet& pure, SearchMode mode, const RunOptions& options = {});
GroupSetResult run_algorithm1(int n, SearchMode mode, const RunOptions& options = {});

/// Serial reference over the same units.
GroupSetResult run_algorithm1_reference(const PureSet& pure, SearchMode mode, const RunOptions& options = {});

/// Full pipeline on a facet list, compared with `expected` (base and free rank).
bool verify_witness(const std::vector<std::vector<int>>& facets, const GroupId& expected,
                    const RecognizeOptions& options = {});

}  // namespace pi1scan
