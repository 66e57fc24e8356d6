#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "pi1scan/finite_group.hpp"
#include "pi1scan/presentation.hpp"

namespace pi1scan {

/// Isomorphism invariants of a finitely presented group.
struct Fingerprint {
  AbelianInvariants abelian;
  /// |Hom(G, T)| for T running over battery(), in battery order.
  std::vector<BigInt> hom_counts;

  /// Invariants of G * F_r.
  Fingerprint with_free_factor(int r) const;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const Presentation& p, std::uint64_t hom_work_cap = kDefaultHomWorkCap);

enum class BaseKind {
  Trivial,
  Cyclic,     // param1 = m
  ZxZ,
  Klein,
  B3,
  D6,
  Q8,
  DInfinity,
  Z2freeZ3,
  ZcrossZ2,
  ZcrossZ3,
  BS,         // param1 = m, param2 = n
  Surface,    // param1 = genus, param2 = 1 if orientable
  X24,
  Unknown,
};

/// Group without free factors, up to isomorphism.
struct GroupBase {
  BaseKind kind = BaseKind::Trivial;
  int param1 = 0;
  int param2 = 0;

  static GroupBase cyclic(int m) { return {BaseKind::Cyclic, m, 0}; }
  static GroupBase baumslag_solitar(int m, int n) { return {BaseKind::BS, m, n}; }
  static GroupBase surface(bool orientable, int genus) { return {BaseKind::Surface, genus, orientable ? 1 : 0}; }

  /// Literally cyclic: trivial or Z/m.
  bool finite_cyclic() const { return kind == BaseKind::Trivial || kind == BaseKind::Cyclic; }
  std::string name() const;
  /// Parses the names produced by name(); throws std::invalid_argument.
  static GroupBase parse(const std::string& s);

  friend auto operator<=>(const GroupBase&, const GroupBase&) = default;
};

/// Catalog label: base * F_free_rank. Unknown results keep their fingerprint.
struct GroupId {
  GroupBase base;
  int free_rank = 0;
  std::optional<Fingerprint> fingerprint;

  bool unknown() const { return base.kind == BaseKind::Unknown; }
  bool trivial() const { return base.kind == BaseKind::Trivial && free_rank == 0; }
  /// The group itself (not just its base) is cyclic.
  bool cyclic() const {
    return (base.kind == BaseKind::Trivial && free_rank <= 1) || (base.kind == BaseKind::Cyclic && free_rank == 0);
  }
  /// "Trivial", "Free(3)", "Cyclic(2)", "Cyclic(2)*F1", "B3", ...
  std::string name() const;
  static GroupId parse(const std::string& s);

  friend bool operator==(const GroupId& a, const GroupId& b) {
    return a.base == b.base && a.free_rank == b.free_rank;
  }
};

struct CatalogEntry {
  GroupBase base;
  Presentation presentation;
  Fingerprint fingerprint;
  std::optional<std::int64_t> order;  // finite groups only
};

/// Catalog of known base groups with their fingerprints. Built once; construction
/// throws std::logic_error if two entries (with any free factors) share a fingerprint.
const std::vector<CatalogEntry>& catalog_fingerprints();

/// Builds a fresh catalog and checks it for collisions; exposed for tests.
std::vector<CatalogEntry> build_catalog();

struct RecognizeOptions {
  std::int64_t coset_limit = kDefaultCosetLimit;
  std::uint64_t hom_work_cap = kDefaultHomWorkCap;
};

/// Identifies a (simplified) presentation against the catalog. Free products of cyclic
/// groups are read off directly; everything else is matched by fingerprint after
/// dividing out the free rank, with coset enumeration as a veto for finite matches.
GroupId recognize(const Presentation& p, const RecognizeOptions& options = {});

/// Fingerprint-only matching, without the structural shortcut.
GroupId recognize_by_fingerprint(const Presentation& p, const RecognizeOptions& options = {});

/// Full pipeline: edge-path presentation, Tietze simplification, recognition.
GroupId fundamental_group(const Complex& k, const RecognizeOptions& options = {});

}  // namespace pi1scan
