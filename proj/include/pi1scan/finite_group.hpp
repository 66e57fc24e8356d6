#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pi1scan/presentation.hpp"

namespace pi1scan {

using BigInt = boost::multiprecision::cpp_int;

class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multiplication table of a finite group. Element 0 is the identity.
class FiniteGroupTable {
 public:
  /// Closure of the given permutations (images of 0..k-1). Throws std::logic_error if
  /// the resulting table fails the group axioms.
  static FiniteGroupTable from_permutations(std::string name, const std::vector<std::vector<int>>& generators);
  static FiniteGroupTable cyclic(int m);

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  /// Number of elements whose order divides m.
  int elements_with_order_dividing(int m) const;

 private:
  void verify() const;

  std::string name_;
  int order_ = 0;
  std::vector<std::uint8_t> table_;
  std::vector<std::uint8_t> inverse_;
};

/// S3, D4, Q8, A4, S4, A5, Z5, Z7, Z8, Z9, in that order.
const std::vector<FiniteGroupTable>& battery();

inline constexpr std::uint64_t kDefaultHomWorkCap = 1'000'000'000;
inline constexpr std::int64_t kDefaultCosetLimit = 100'000;

/// |Hom(G, T)| by backtracking over generator images. Generators absent from every
/// relator contribute a factor |T| each. Throws ResourceCapExceeded when more than
/// `work_cap` relator evaluations would be needed.
BigInt count_homs(const Presentation& p, const FiniteGroupTable& t, std::uint64_t work_cap = kDefaultHomWorkCap);

/// Coset enumeration over the trivial subgroup (HLT with coincidence processing).
/// Returns |G| when the table closes using at most `max_cosets` cosets.
std::optional<std::int64_t> todd_coxeter(const Presentation& p, std::int64_t max_cosets = kDefaultCosetLimit);

}  // namespace pi1scan
