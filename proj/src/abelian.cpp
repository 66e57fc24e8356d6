#include "pi1scan/abelian.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace pi1scan {

namespace {

struct Overflow {};

template <typename Int>
Int checked_sub_mul(const Int& a, const Int& q, const Int& b) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    std::int64_t prod = 0;
    std::int64_t out = 0;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
    return out;
  } else {
    return a - q * b;
  }
}

template <typename Int>
Int abs_value(const Int& x) {
  return x < 0 ? Int(-x) : x;
}

// Diagonalizes by elementary row and column operations; returns the absolute values of
// the nonzero diagonal entries (not yet a divisibility chain).
template <typename Int>
std::vector<Int> diagonalize(std::vector<std::vector<Int>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Int> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pr = rows, pc = cols;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (best == 0 || abs_value(a[i][j]) < best)) {
          best = abs_value(a[i][j]);
          pr = i;
          pc = j;
        }
    if (best == 0) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] = checked_sub_mul(a[i][j], q, a[t][j]);
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] = checked_sub_mul(a[i][j], q, a[i][t]);
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs_value(a[t][t]));
    ++t;
  }
  return diag;
}

template <typename Int>
void to_divisibility_chain(std::vector<Int>& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Int g;
      if constexpr (std::is_same_v<Int, std::int64_t>)
        g = std::gcd(d[i], d[j]);
      else
        g = boost::multiprecision::gcd(d[i], d[j]);
      Int l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
}

}  // namespace

std::vector<std::int64_t> invariant_factors(const IntMatrix& m) {
  try {
    auto d = diagonalize<std::int64_t>(m);
    to_divisibility_chain(d);
    return d;
  } catch (const Overflow&) {
    using Big = boost::multiprecision::cpp_int;
    std::vector<std::vector<Big>> big(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) big[i].assign(m[i].begin(), m[i].end());
    auto d = diagonalize<Big>(std::move(big));
    to_divisibility_chain(d);
    std::vector<std::int64_t> out;
    for (const auto& x : d) {
      if (x > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("invariant factor exceeds 64 bits");
      out.push_back(static_cast<std::int64_t>(x));
    }
    return out;
  }
}

AbelianInvariants cokernel_invariants(const IntMatrix& m, int cols) {
  AbelianInvariants out;
  if (m.empty()) {
    out.rank = cols;
    return out;
  }
  auto d = invariant_factors(m);
  out.rank = cols - static_cast<int>(d.size());
  for (auto x : d)
    if (x > 1) out.torsion.push_back(x);
  return out;
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (auto d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace pi1scan
