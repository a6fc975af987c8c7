#pragma once

// Brute-force enumerators used to cross-check the context construction and the
// concept engine at desk scale. Each is self-contained and single-threaded.

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "satfca/context.hpp"
#include "satfca/errors.hpp"
#include "satfca/lattice.hpp"
#include "satfca/qstats.hpp"
#include "satfca/transfer.hpp"

namespace satfca {

struct EnumerationReport {
  BigNat count = 0;
  /// Filled only on request, and only when every solution fits under the
  /// witness cap, so that witnesses.size() == count whenever non-empty.
  std::vector<ArrowSet> witnesses;
  std::string method;
};

struct OracleOptions {
  std::size_t cap = 0;  // 0: the oracle's default
  bool collect_witnesses = false;
  std::size_t witness_cap = 100000;
};

inline constexpr std::size_t kSaturatedOracleCap = 24;
inline constexpr std::size_t kTransferOracleCap = 20;
inline constexpr std::size_t kClosureOracleCap = 20;

namespace oracle_detail {

// A clause is satisfied when at least one literal holds.
struct Literal {
  std::size_t var;
  bool positive;
};
using Clause = std::vector<Literal>;

}  // namespace oracle_detail

/// Counts sets of covering relations satisfying Covering, Restriction and
/// 3-out-of-4; on a modular lattice these are in bijection with saturated
/// transfer systems. Constraints are checked as soon as all their edges are
/// decided.
inline EnumerationReport enumerate_saturated_brute(const FiniteLattice& L, const OracleOptions& opt = {}) {
  using namespace oracle_detail;
  const std::size_t cap = opt.cap ? opt.cap : kSaturatedOracleCap;
  if (!is_modular(L)) throw PreconditionError("saturated-cover oracle requires a modular lattice");
  const auto& covers = L.covers();
  const std::size_t k = covers.size();
  if (k > cap) {
    throw CapExceededError("lattice has " + std::to_string(k) + " covering relations, above the oracle cap of " +
                           std::to_string(cap));
  }
  std::vector<std::vector<long>> var_of(L.size(), std::vector<long>(L.size(), -1));
  for (std::size_t i = 0; i < k; ++i) var_of[covers[i].source][covers[i].target] = static_cast<long>(i);

  std::vector<std::vector<Clause>> by_last(k);
  auto add = [&](Clause c) {
    std::size_t last = 0;
    for (const auto& l : c) last = std::max(last, l.var);
    by_last[last].push_back(std::move(c));
  };
  // Restriction: x -> x v y in S forces x ^ y -> y in S.
  for (std::size_t i = 0; i < k; ++i) {
    const Element x = covers[i].source, z = covers[i].target;
    for (Element y = 0; y < L.size(); ++y) {
      if (L.join(x, y) != z) continue;
      const Element m = L.meet(x, y);
      const long v = var_of[m][y];
      if (v < 0) {
        add({{i, false}});
      } else {
        add({{i, false}, {static_cast<std::size_t>(v), true}});
      }
    }
  }
  // 3-out-of-4 on each square m < x, y < j with x, y covering m.
  for (Element x = 0; x < L.size(); ++x) {
    for (Element y = x + 1; y < L.size(); ++y) {
      const Element m = L.meet(x, y), j = L.join(x, y);
      if (var_of[m][x] < 0 || var_of[m][y] < 0 || var_of[x][j] < 0 || var_of[y][j] < 0) continue;
      const std::size_t e[4] = {static_cast<std::size_t>(var_of[m][x]), static_cast<std::size_t>(var_of[m][y]),
                                static_cast<std::size_t>(var_of[x][j]), static_cast<std::size_t>(var_of[y][j])};
      for (int missing = 0; missing < 4; ++missing) {
        Clause c;
        for (int t = 0; t < 4; ++t) c.push_back({e[t], t == missing});
        add(std::move(c));
      }
    }
  }

  EnumerationReport report;
  report.method = "saturated-cover backtracking";
  std::vector<bool> value(k, false);
  bool keep_witnesses = opt.collect_witnesses;
  std::uint64_t count = 0;
  auto satisfied = [&](std::size_t i) {
    for (const Clause& c : by_last[i]) {
      bool sat = false;
      for (const auto& l : c) {
        if (value[l.var] == l.positive) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  };
  auto solve = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      ++count;
      if (keep_witnesses) {
        if (report.witnesses.size() == opt.witness_cap) {
          keep_witnesses = false;
          report.witnesses.clear();
          return;
        }
        SaturatedCover S{&L, {}};
        for (std::size_t v = 0; v < k; ++v) {
          if (value[v]) S.edges.push_back(covers[v]);
        }
        report.witnesses.push_back(from_saturated_cover(S));
      }
      return;
    }
    for (bool b : {false, true}) {
      value[i] = b;
      if (satisfied(i)) self(self, i + 1);
    }
    value[i] = false;
  };
  solve(solve, 0);
  report.count = count;
  return report;
}

/// Counts transfer systems directly from the axioms: subsets of the
/// non-identity comparable pairs that, with the identities, are transitive
/// and closed under restriction x -> y, z <= y  =>  x ^ z -> z.
inline EnumerationReport enumerate_transfer_brute(const FiniteLattice& L, const OracleOptions& opt = {}) {
  const std::size_t cap = opt.cap ? opt.cap : kTransferOracleCap;
  std::vector<Arrow> arrows;
  for (Element x = 0; x < L.size(); ++x) {
    for (Element y = 0; y < L.size(); ++y) {
      if (x != y && L.leq(x, y)) arrows.push_back({x, y});
    }
  }
  const std::size_t k = arrows.size();
  if (k > cap) {
    throw CapExceededError("lattice has " + std::to_string(k) + " non-identity relations, above the oracle cap of " +
                           std::to_string(cap));
  }
  std::vector<std::vector<long>> index(L.size(), std::vector<long>(L.size(), -1));
  for (std::size_t i = 0; i < k; ++i) index[arrows[i].source][arrows[i].target] = static_cast<long>(i);

  // Rules "premises => conclusion" over arrow indices, filed under the largest
  // index they mention so they are checked once fully decided.
  struct Rule {
    std::size_t p1, p2, conclusion;
    bool two_premises;
  };
  std::vector<std::vector<Rule>> rules(k);
  auto file = [&](Rule r) {
    std::size_t last = std::max(r.p1, r.conclusion);
    if (r.two_premises) last = std::max(last, r.p2);
    rules[last].push_back(r);
  };
  for (std::size_t i = 0; i < k; ++i) {
    const auto [x, y] = arrows[i];
    // Transitivity with every y -> z.
    for (Element z = 0; z < L.size(); ++z) {
      if (index[y][z] >= 0) {
        file({i, static_cast<std::size_t>(index[y][z]), static_cast<std::size_t>(index[x][z]), true});
      }
    }
    // Restriction along z <= y.
    for (Element z = 0; z < L.size(); ++z) {
      if (!L.leq(z, y)) continue;
      const Element m = L.meet(x, z);
      if (m == z) continue;  // identity
      file({i, i, static_cast<std::size_t>(index[m][z]), false});
    }
  }

  EnumerationReport report;
  report.method = "transfer-axiom subset search";
  std::vector<bool> in(k, false);
  bool keep_witnesses = opt.collect_witnesses;
  std::uint64_t count = 0;
  auto ok = [&](std::size_t i) {
    for (const Rule& r : rules[i]) {
      const bool premise = in[r.p1] && (!r.two_premises || in[r.p2]);
      if (premise && !in[r.conclusion]) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      ++count;
      if (keep_witnesses) {
        if (report.witnesses.size() == opt.witness_cap) {
          keep_witnesses = false;
          report.witnesses.clear();
          return;
        }
        ArrowSet T = ArrowSet::identities(L);
        for (std::size_t v = 0; v < k; ++v) {
          if (in[v]) T.insert(arrows[v]);
        }
        report.witnesses.push_back(std::move(T));
      }
      return;
    }
    for (bool b : {false, true}) {
      in[i] = b;
      if (ok(i)) self(self, i + 1);
    }
    in[i] = false;
  };
  search(search, 0);
  report.count = count;
  return report;
}

/// Number of distinct closures B'' over every attribute subset B.
inline EnumerationReport closure_count_oracle(const FormalContext& C, const OracleOptions& opt = {}) {
  const std::size_t cap = opt.cap ? opt.cap : kClosureOracleCap;
  const std::size_t m = C.attributes();
  if (m > cap || m > 30) {
    throw CapExceededError("context has " + std::to_string(m) + " attributes, above the closure oracle cap of " +
                           std::to_string(std::min<std::size_t>(cap, 30)));
  }
  std::vector<std::uint32_t> rows(C.objects(), 0);
  for (std::size_t g = 0; g < C.objects(); ++g) {
    for (std::size_t a = 0; a < m; ++a) {
      if (C.incident(g, a)) rows[g] |= std::uint32_t{1} << a;
    }
  }
  const std::uint32_t all = m == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m) - 1;
  std::unordered_set<std::uint32_t> closures;
  for (std::uint64_t b = 0; b <= all; ++b) {
    std::uint32_t closure = all;
    for (std::uint32_t r : rows) {
      if ((r & b) == b) closure &= r;
    }
    closures.insert(closure);
  }
  EnumerationReport report;
  report.method = "attribute-powerset closure";
  report.count = closures.size();
  return report;
}

/// Lattice of a family of arrow sets ordered by inclusion.
inline FiniteLattice lattice_of_arrow_sets(const std::vector<ArrowSet>& family) {
  const std::size_t n = family.size();
  BitMatrix leq(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (family[i].is_subset_of(family[j])) leq.set(i, j);
    }
  }
  return FiniteLattice::from_order(std::move(leq));
}

}  // namespace satfca
