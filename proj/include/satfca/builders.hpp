#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "satfca/errors.hpp"
#include "satfca/lattice.hpp"

namespace satfca {

/// Total order 0 < 1 < ... < k.
inline FiniteLattice chain(std::size_t k) {
  std::vector<Arrow> edges;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i <= k; ++i) labels.push_back(std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) {
    edges.push_back({static_cast<Element>(i), static_cast<Element>(i + 1)});
  }
  return FiniteLattice::from_covers(k + 1, edges, std::move(labels));
}

/// M_k: bottom (0), k pairwise incomparable atoms (1..k), top (k+1).
/// M_{p+1} is the subspace lattice of F_p^2.
inline FiniteLattice diamond(std::size_t atoms) {
  const auto top = static_cast<Element>(atoms + 1);
  std::vector<Arrow> edges;
  std::vector<std::string> labels{"bot"};
  for (Element a = 1; a <= atoms; ++a) {
    edges.push_back({0, a});
    edges.push_back({a, top});
    labels.push_back("a" + std::to_string(a));
  }
  labels.push_back("top");
  return FiniteLattice::from_covers(atoms + 2, edges, std::move(labels));
}

/// N_5: 0 < a < b < 1 and 0 < c < 1. The smallest non-modular lattice.
inline FiniteLattice pentagon() {
  return FiniteLattice::from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}},
                                    {"0", "a", "b", "c", "1"});
}

inline FiniteLattice load_lattice(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lattice file " + path.string());
  return parse_lattice(in);
}

// ---------------------------------------------------------------------------
// Linear algebra over F_p for the subspace lattice.

namespace fp {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

using Vec = std::vector<std::uint32_t>;

class Field {
 public:
  explicit Field(std::uint32_t p) : p_(p), inv_(p, 0) {
    for (std::uint32_t a = 1; a < p; ++a) {
      for (std::uint32_t b = 1; b < p; ++b) {
        if ((a * b) % p == 1) inv_[a] = b;
      }
    }
  }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return (a * b) % p_; }
  std::uint32_t inv(std::uint32_t a) const noexcept { return inv_[a]; }

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inv_;
};

/// Reduced row echelon form of the span of `rows`; zero rows dropped.
inline std::vector<Vec> rref(const Field& F, std::vector<Vec> rows, std::size_t n) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const std::uint32_t s = F.inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = F.mul(v, s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint32_t f = rows[r][col];
      for (std::size_t c = 0; c < n; ++c) rows[r][c] = F.sub(rows[r][c], F.mul(f, rows[rank][c]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

inline std::size_t pivot_of(const Vec& row) {
  std::size_t c = 0;
  while (c < row.size() && row[c] == 0) ++c;
  return c;
}

/// v in span(basis), basis in RREF.
inline bool in_span(const Field& F, Vec v, const std::vector<Vec>& basis) {
  for (const Vec& b : basis) {
    const std::size_t piv = pivot_of(b);
    const std::uint32_t f = v[piv];
    if (f == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = F.sub(v[c], F.mul(f, b[c]));
  }
  for (auto x : v) {
    if (x) return false;
  }
  return true;
}

/// RREF basis of {v : <u, v> = 0 for all u in span(basis)}; basis in RREF.
inline std::vector<Vec> perp(const Field& F, const std::vector<Vec>& basis, std::size_t n) {
  std::vector<bool> is_pivot(n, false);
  for (const Vec& b : basis) is_pivot[pivot_of(b)] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n, 0);
    v[f] = 1;
    for (const Vec& b : basis) v[pivot_of(b)] = F.sub(0, b[f]);
    out.push_back(std::move(v));
  }
  return rref(F, std::move(out), n);
}

}  // namespace fp

/// Canonical label of a subspace: its RREF basis, e.g. "{100,010}"; the zero
/// subspace is "0". Entries are dot-separated when p > 10.
inline std::string subspace_label(const std::vector<fp::Vec>& basis, std::uint32_t p) {
  if (basis.empty()) return "0";
  std::string s = "{";
  for (std::size_t r = 0; r < basis.size(); ++r) {
    if (r) s += ',';
    for (std::size_t c = 0; c < basis[r].size(); ++c) {
      if (p > 10 && c) s += '.';
      s += std::to_string(basis[r][c]);
    }
  }
  return s + "}";
}

inline constexpr std::size_t kDefaultSubspaceCap = 20000;

/// Number of subspaces of F_p^n, saturating at SIZE_MAX.
inline std::size_t subspace_count(std::uint64_t p, std::size_t n) {
  // Gaussian binomials by the q-Pascal rule, saturating.
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  auto sat_add = [](std::size_t a, std::size_t b) { return a > kMax - b ? kMax : a + b; };
  auto sat_mul = [](std::size_t a, std::size_t b) {
    return (a != 0 && b > kMax / a) ? kMax : a * b;
  };
  std::vector<std::size_t> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::size_t> next(m + 1, 1);
    std::size_t pk = 1;
    for (std::size_t k = 1; k < m; ++k) {
      pk = sat_mul(pk, p);
      next[k] = sat_add(row[k - 1], sat_mul(pk, row[k]));
    }
    row = std::move(next);
  }
  std::size_t total = 0;
  for (auto v : row) total = sat_add(total, v);
  return total;
}

/// Lattice of subspaces of F_p^n under inclusion (isomorphic to Sub(C_p^n)).
/// Elements are ordered by dimension, then pivot columns lexicographically,
/// then free entries lexicographically.
inline FiniteLattice subspace_lattice(std::uint32_t p, std::size_t n,
                                      std::size_t max_size = kDefaultSubspaceCap) {
  if (!fp::is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  const std::size_t expected = subspace_count(p, n);
  if (expected > max_size) {
    throw CapExceededError("subspace lattice of F_" + std::to_string(p) + "^" +
                           std::to_string(n) + " has " + std::to_string(expected) +
                           " elements, above the cap of " + std::to_string(max_size));
  }
  const fp::Field F(p);

  std::vector<std::vector<fp::Vec>> bases;
  for (std::size_t k = 0; k <= n; ++k) {
    // Pivot column sets in lexicographic order.
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      // Free positions: (row r, column c) with c > piv[r] and c not a pivot.
      std::vector<bool> is_pivot(n, false);
      for (auto c : piv) is_pivot[c] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = piv[r] + 1; c < n; ++c) {
          if (!is_pivot[c]) free.emplace_back(r, c);
        }
      }
      std::vector<std::uint32_t> digits(free.size(), 0);
      while (true) {
        std::vector<fp::Vec> basis(k, fp::Vec(n, 0));
        for (std::size_t r = 0; r < k; ++r) basis[r][piv[r]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f) {
          basis[free[f].first][free[f].second] = digits[f];
        }
        bases.push_back(std::move(basis));
        // Odometer with the first free entry most significant.
        std::size_t pos = free.size();
        bool carry = true;
        while (pos > 0 && carry) {
          --pos;
          if (++digits[pos] < p) {
            carry = false;
          } else {
            digits[pos] = 0;
          }
        }
        if (carry) break;
      }
      // Next combination.
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }

  const std::size_t size = bases.size();
  auto key_of = [&](const std::vector<fp::Vec>& b) {
    std::string key;
    key.reserve(4 * b.size() * n + 1);
    key.push_back(static_cast<char>(b.size()));
    for (const auto& row : b) {
      for (std::uint32_t x : row) {
        for (int byte = 0; byte < 4; ++byte) key.push_back(static_cast<char>((x >> (8 * byte)) & 0xffu));
      }
    }
    return key;
  };
  std::unordered_map<std::string, Element> index;
  index.reserve(size * 2);
  for (std::size_t i = 0; i < size; ++i) index.emplace(key_of(bases[i]), static_cast<Element>(i));

  LatticeParts parts;
  parts.leq = BitMatrix(size, size);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      if (bases[x].size() > bases[y].size()) continue;
      bool inside = true;
      for (const auto& v : bases[x]) {
        if (!fp::in_span(F, v, bases[y])) {
          inside = false;
          break;
        }
      }
      if (inside) parts.leq.set(x, y);
    }
  }
  parts.join_table.assign(size, std::vector<Element>(size));
  parts.meet_table.assign(size, std::vector<Element>(size));
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = x; y < size; ++y) {
      Element j;
      if (parts.leq.test(x, y)) {
        j = static_cast<Element>(y);
      } else if (parts.leq.test(y, x)) {
        j = static_cast<Element>(x);
      } else {
        std::vector<fp::Vec> rows = bases[x];
        rows.insert(rows.end(), bases[y].begin(), bases[y].end());
        j = index.at(key_of(fp::rref(F, std::move(rows), n)));
      }
      parts.join_table[x][y] = parts.join_table[y][x] = j;
    }
  }
  // U ^ W = perp(perp U + perp W)
  std::vector<Element> perp_of(size);
  for (std::size_t x = 0; x < size; ++x) perp_of[x] = index.at(key_of(fp::perp(F, bases[x], n)));
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      parts.meet_table[x][y] = perp_of[parts.join_table[perp_of[x]][perp_of[y]]];
    }
  }
  parts.bottom = 0;
  parts.top = static_cast<Element>(size - 1);
  for (std::size_t x = 0; x < size; ++x) {
    parts.leq.row(x).for_each([&](std::size_t y) {
      if (bases[y].size() == bases[x].size() + 1) {
        parts.covers.push_back({static_cast<Element>(x), static_cast<Element>(y)});
      }
    });
  }
  parts.labels.reserve(size);
  for (const auto& b : bases) parts.labels.push_back(subspace_label(b, p));
  return FiniteLattice::from_parts(std::move(parts));
}

}  // namespace satfca
