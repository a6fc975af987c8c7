#pragma once

// Exact counting formulas for subspace lattices of F_p^n: Gaussian binomials,
// subspace totals a(n,p), irreducible counts, zero counts of the reduced
// context and its density. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "satfca/errors.hpp"

namespace satfca {

using BigNat = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigNat& n) { return n.str(); }

namespace qstats {

inline BigNat power(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigNat(base), static_cast<unsigned>(exp));
}

inline void require_base(std::uint64_t p) {
  if (p < 2) throw PreconditionError("q-binomial base must be at least 2");
}

/// Number of i-dimensional subspaces of F_p^n (Gaussian binomial).
/// Returns 0 when i > n.
inline BigNat qbinom(std::uint64_t n, std::uint64_t i, std::uint64_t p) {
  require_base(p);
  if (i > n) return 0;
  // prod_{j=1..i} (p^{n-i+j} - 1) / (p^j - 1); after step t the running
  // value is qbinom(n-i+t, t), so every division is exact.
  BigNat r = 1;
  for (std::uint64_t j = 1; j <= i; ++j) {
    r *= power(p, n - i + j) - 1;
    r /= power(p, j) - 1;
  }
  return r;
}

/// Total number of subspaces, as a sum of Gaussian binomials.
inline BigNat a_direct(std::uint64_t n, std::uint64_t p) {
  BigNat s = 0;
  for (std::uint64_t i = 0; i <= n; ++i) s += qbinom(n, i, p);
  return s;
}

/// Same total via a(n+2) = 2 a(n+1) + (p^{n+1} - 1) a(n), a(0) = 1, a(1) = 2.
inline BigNat a_rec(std::uint64_t n, std::uint64_t p) {
  require_base(p);
  BigNat prev = 1, cur = 2;
  if (n == 0) return prev;
  for (std::uint64_t m = 0; m + 1 < n; ++m) {
    BigNat next = 2 * cur + (power(p, m + 1) - 1) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline BigNat a(std::uint64_t n, std::uint64_t p) { return a_rec(n, p); }

inline void require_positive_dim(std::uint64_t n) {
  if (n < 1) throw PreconditionError("dimension must be at least 1");
}

/// Meet-irreducible saturated transfer systems: the non-zero subspaces.
inline BigNat count_meet_irr(std::uint64_t n, std::uint64_t p) {
  require_positive_dim(n);
  BigNat s = 0;
  for (std::uint64_t i = 1; i <= n; ++i) s += qbinom(n, i, p);
  return s;
}

/// Join-irreducible saturated transfer systems: qbinom(n,1,p) * a(n-1,p).
inline BigNat count_join_irr(std::uint64_t n, std::uint64_t p) {
  require_positive_dim(n);
  return qbinom(n, 1, p) * a(n - 1, p);
}

/// The same count as sum_{d=1..n} qbinom(n,d,p) qbinom(d,1,p) (pairs A <= B, dim A = 1).
inline BigNat count_join_irr_sum(std::uint64_t n, std::uint64_t p) {
  require_positive_dim(n);
  BigNat s = 0;
  for (std::uint64_t d = 1; d <= n; ++d) s += qbinom(n, d, p) * qbinom(d, 1, p);
  return s;
}

/// And as sum_{i=0..n-1} qbinom(n,i,p) qbinom(n-i,1,p).
inline BigNat count_join_irr_codim_sum(std::uint64_t n, std::uint64_t p) {
  require_positive_dim(n);
  BigNat s = 0;
  for (std::uint64_t i = 0; i < n; ++i) s += qbinom(n, i, p) * qbinom(n - i, 1, p);
  return s;
}

/// Zeros of the reduced context: sum_d qbinom(n,d,p) qbinom(d,1,p) (a(d,p) - a(d-1,p)).
inline BigNat count_zeros(std::uint64_t n, std::uint64_t p) {
  require_positive_dim(n);
  BigNat s = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    s += qbinom(n, d, p) * qbinom(d, 1, p) * (a(d, p) - a(d - 1, p));
  }
  return s;
}

/// Fraction of ones in the reduced context of the saturated transfer systems
/// on the subspace lattice of F_p^n.
inline ExactRational density_formula(std::uint64_t n, std::uint64_t p) {
  require_positive_dim(n);
  const BigNat cells = qbinom(n, 1, p) * (a(n, p) - 1) * a(n - 1, p);
  return ExactRational(1) - ExactRational(count_zeros(n, p), cells);
}

/// p^{(n^2-1)/4} <= a(n,p) <= p^{(n+1.1)^2/4}, compared exactly:
/// lower as p^{n^2-1} <= a^4, upper as a^400 <= p^{100 n^2 + 220 n + 121}.
struct BoundsCheck {
  bool lower = false;
  bool upper = false;
  bool ok() const noexcept { return lower && upper; }
};

inline BoundsCheck check_bounds_detail(std::uint64_t n, std::uint64_t p) {
  require_base(p);
  const BigNat an = a(n, p);
  BoundsCheck r;
  // n = 0 gives a negative exponent; p^{-1/4} < 1 <= a.
  r.lower = n == 0 ? an >= 1 : power(p, n * n - 1) <= boost::multiprecision::pow(an, 4);
  r.upper = boost::multiprecision::pow(an, 400) <= power(p, 100 * n * n + 220 * n + 121);
  return r;
}

inline bool check_bounds(std::uint64_t n, std::uint64_t p) { return check_bounds_detail(n, p).ok(); }

/// m^{(n^2-1)/4} - 1 >= m^{(n^2-3)/4} for integer m >= 2, n >= 3, decided
/// exactly. With E = n^2 - 3 the claim is m^{E/4}(sqrt(m) - 1) >= 1; taking
/// fourth powers and isolating sqrt(m) leaves
///   m^E (m^2 + 6m + 1) - 1 >= 4 m^E (m + 1) sqrt(m),
/// which is squared once more (left side checked non-negative first).
inline bool power_inequality_holds(std::uint64_t m, std::uint64_t n) {
  if (m < 2 || n < 3) throw PreconditionError("power inequality needs m >= 2 and n >= 3");
  const std::uint64_t e = n * n - 3;
  const BigNat me = power(m, e);
  const BigNat lhs = me * (BigNat(m) * m + 6 * BigNat(m) + 1) - 1;
  if (lhs < 0) return false;
  const BigNat rhs_sq = 16 * me * me * (BigNat(m) + 1) * (BigNat(m) + 1) * m;
  return lhs * lhs >= rhs_sq;
}

}  // namespace qstats
}  // namespace satfca
