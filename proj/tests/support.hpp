#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "satfca/satfca.hpp"

namespace satfca::testing {

struct NamedLattice {
  std::string name;
  FiniteLattice lattice;
};

// Chains of length 1..5, M_3, M_4, M_6 and Sub(F_p^n) for (p,n) in
// {(2,2), (3,2), (2,3)}.
inline std::vector<NamedLattice> modular_test_set() {
  std::vector<NamedLattice> out;
  for (std::size_t k = 1; k <= 5; ++k) out.push_back({"chain(" + std::to_string(k) + ")", chain(k)});
  out.push_back({"M3", diamond(3)});
  out.push_back({"M4", diamond(4)});
  out.push_back({"M6", diamond(6)});
  out.push_back({"subspace(2,2)", subspace_lattice(2, 2)});
  out.push_back({"subspace(3,2)", subspace_lattice(3, 2)});
  out.push_back({"subspace(2,3)", subspace_lattice(2, 3)});
  return out;
}

// Lattice of a family of subsets of {0..k-1} (bit masks), closed under
// intersection and completed with the full set. Ordered by inclusion.
inline FiniteLattice closure_system(std::vector<std::uint32_t> sets, unsigned k) {
  const std::uint32_t full = (1u << k) - 1;
  std::set<std::uint32_t> family(sets.begin(), sets.end());
  family.insert(full);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::uint32_t> snapshot(family.begin(), family.end());
    for (std::uint32_t a : snapshot) {
      for (std::uint32_t b : snapshot) grew |= family.insert(a & b).second;
    }
  }
  const std::vector<std::uint32_t> v(family.begin(), family.end());
  BitMatrix leq(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if ((v[i] & v[j]) == v[i]) leq.set(i, j);
    }
  }
  return FiniteLattice::from_order(std::move(leq));
}

// Random lattices with at most `max_size` elements, from random closure
// systems on a k-set.
inline std::vector<FiniteLattice> random_lattices(std::uint64_t seed, std::size_t count, unsigned k,
                                                  std::size_t max_size) {
  std::mt19937_64 rng(seed);
  std::vector<FiniteLattice> out;
  while (out.size() < count) {
    std::vector<std::uint32_t> sets;
    const int picks = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < picks; ++i) sets.push_back(static_cast<std::uint32_t>(rng() % (1u << k)));
    FiniteLattice L = closure_system(sets, k);
    if (L.size() >= 2 && L.size() <= max_size) out.push_back(std::move(L));
  }
  return out;
}

// One representative of every lattice with 1..max_size elements, up to
// isomorphism. The elements strictly between bottom and top range over all
// naturally labelled posets (i < j as a relation only if i < j as integers).
inline std::vector<FiniteLattice> all_lattices(std::size_t max_size) {
  std::vector<FiniteLattice> out;
  if (max_size >= 1) out.push_back(chain(0));
  using Signature = std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>;
  auto signature = [](const FiniteLattice& L) {
    Signature s;
    for (Element x = 0; x < L.size(); ++x) s.emplace_back(L.height(x), L.up(x).count(), L.down(x).count());
    std::sort(s.begin(), s.end());
    return s;
  };
  for (std::size_t n = 2; n <= max_size; ++n) {
    const std::size_t m = n - 2;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    }
    std::map<Signature, std::vector<FiniteLattice>> classes;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if ((mask >> b) & 1u) rel[pairs[b].first][pairs[b].second] = true;
      }
      bool transitive = true;
      for (std::size_t i = 0; i < m && transitive; ++i) {
        for (std::size_t j = i + 1; j < m && transitive; ++j) {
          for (std::size_t k = j + 1; k < m && transitive; ++k) {
            if (rel[i][j] && rel[j][k] && !rel[i][k]) transitive = false;
          }
        }
      }
      if (!transitive) continue;
      BitMatrix leq(n, n);
      for (std::size_t x = 0; x < n; ++x) {
        leq.set(0, x);
        leq.set(x, n - 1);
        leq.set(x, x);
      }
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (rel[i][j]) leq.set(i + 1, j + 1);
        }
      }
      FiniteLattice L;
      try {
        L = FiniteLattice::from_order(std::move(leq));
      } catch (const NotALatticeError&) {
        continue;
      }
      auto& bucket = classes[signature(L)];
      bool seen = false;
      for (const auto& other : bucket) {
        if (are_isomorphic(L, other)) {
          seen = true;
          break;
        }
      }
      if (!seen) bucket.push_back(std::move(L));
    }
    for (auto& [sig, bucket] : classes) {
      for (auto& L : bucket) out.push_back(std::move(L));
    }
  }
  return out;
}

// Dedekind: modular iff no pentagon sublattice 0 < a < b < 1, c with
// a ^ c = b ^ c = 0 and a v c = b v c = 1.
inline bool has_pentagon_sublattice(const FiniteLattice& L) {
  const Element n = static_cast<Element>(L.size());
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (!L.less(a, b)) continue;
      for (Element c = 0; c < n; ++c) {
        if (L.leq(c, b) || L.leq(b, c) || L.leq(c, a) || L.leq(a, c)) continue;
        if (L.meet(a, c) == L.meet(b, c) && L.join(a, c) == L.join(b, c)) return true;
      }
    }
  }
  return false;
}

// All transfer systems on L, straight from the oracle.
inline std::vector<ArrowSet> all_transfer_systems(const FiniteLattice& L) {
  OracleOptions opt;
  opt.cap = 64;
  opt.collect_witnesses = true;
  return enumerate_transfer_brute(L, opt).witnesses;
}

// Every vector of F_p^n as a digit string, for span computations that avoid
// row reduction entirely.
inline std::set<std::vector<std::uint32_t>> span_of(const std::vector<std::vector<std::uint32_t>>& basis,
                                                    std::uint32_t p, std::size_t n) {
  std::set<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> coeff(basis.size(), 0);
  while (true) {
    std::vector<std::uint32_t> v(n, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) v[j] = (v[j] + coeff[i] * basis[i][j]) % p;
    }
    out.insert(v);
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  return out;
}

inline FormalContext permuted_randomly(const FormalContext& C, std::mt19937_64& rng) {
  std::vector<std::size_t> rows(C.objects()), cols(C.attributes());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  std::shuffle(rows.begin(), rows.end(), rng);
  std::shuffle(cols.begin(), cols.end(), rng);
  return C.permuted(rows, cols);
}

}  // namespace satfca::testing
