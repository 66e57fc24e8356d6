#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pi1scan {

/// Finitely generated abelian group Z^rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, di >= 2.
struct AbelianInvariants {
  int rank = 0;
  std::vector<std::int64_t> torsion;

  bool is_cyclic() const {
    return rank + static_cast<int>(torsion.size()) <= 1;
  }
  std::string to_string() const;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Nonzero invariant factors of an integer matrix (absolute values, divisibility chain).
/// The size of the result is the rank of the matrix.
std::vector<std::int64_t> invariant_factors(const IntMatrix& m);

/// Cokernel of the map Z^rows -> Z^cols given by the rows of `m`, i.e. the abelian group
/// with `cols` generators and one relation per row.
AbelianInvariants cokernel_invariants(const IntMatrix& m, int cols);

}  // namespace pi1scan
