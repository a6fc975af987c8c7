#pragma once

// Finite bounded lattices over dense element indices 0..size-1.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "satfca/bitset.hpp"
#include "satfca/errors.hpp"

namespace satfca {

using Element = std::uint32_t;

/// A comparable pair source <= target.
struct Arrow {
  Element source = 0;
  Element target = 0;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// Raw lattice data. FiniteLattice::from_parts accepts it unchecked, which
/// is what validate() exists for.
struct LatticeParts {
  BitMatrix leq;
  std::vector<std::vector<Element>> meet_table;
  std::vector<std::vector<Element>> join_table;
  Element bottom = 0;
  Element top = 0;
  std::vector<Arrow> covers;
  std::vector<std::string> labels;
};

class FiniteLattice {
 public:
  FiniteLattice() = default;

  /// Builds the lattice from a partial order given as a reflexive bit matrix.
  /// Throws NotALatticeError if the order is not antisymmetric or some pair
  /// lacks a meet or join.
  static FiniteLattice from_order(BitMatrix leq, std::vector<std::string> labels = {});

  /// Order is the reflexive-transitive closure of `edges`.
  static FiniteLattice from_covers(std::size_t size, const std::vector<Arrow>& edges,
                                   std::vector<std::string> labels = {});

  /// No checks at all; see validate().
  static FiniteLattice from_parts(LatticeParts parts) {
    FiniteLattice l;
    l.parts_ = std::move(parts);
    l.finish_derived();
    return l;
  }

  std::size_t size() const noexcept { return parts_.leq.rows(); }
  Element bottom() const noexcept { return parts_.bottom; }
  Element top() const noexcept { return parts_.top; }

  bool leq(Element x, Element y) const noexcept { return parts_.leq.test(x, y); }
  bool less(Element x, Element y) const noexcept { return x != y && leq(x, y); }
  const BitMatrix& order() const noexcept { return parts_.leq; }
  /// {y : x <= y}
  const Bitset& up(Element x) const noexcept { return parts_.leq.row(x); }
  /// {y : y <= x}
  const Bitset& down(Element x) const noexcept { return down_.row(x); }

  Element meet(Element x, Element y) const {
    check_index(x);
    check_index(y);
    return parts_.meet_table[x][y];
  }
  Element join(Element x, Element y) const {
    check_index(x);
    check_index(y);
    return parts_.join_table[x][y];
  }

  /// Covering pairs, lexicographic on (source, target).
  const std::vector<Arrow>& covers() const noexcept { return parts_.covers; }
  bool is_cover(Element x, Element y) const noexcept { return cover_matrix_.test(x, y); }

  /// Length of the longest chain from bottom to x.
  std::size_t height(Element x) const noexcept { return heights_[x]; }

  bool has_labels() const noexcept { return !parts_.labels.empty(); }
  std::string label(Element x) const {
    if (x < parts_.labels.size() && !parts_.labels[x].empty()) return parts_.labels[x];
    return std::to_string(x);
  }
  const std::vector<std::string>& labels() const noexcept { return parts_.labels; }

  const LatticeParts& parts() const noexcept { return parts_; }

  /// All comparable pairs x <= y (identities included), lexicographic.
  std::vector<Arrow> comparable_pairs(bool include_identities = true) const {
    std::vector<Arrow> out;
    for (Element x = 0; x < size(); ++x) {
      up(x).for_each([&](std::size_t y) {
        if (include_identities || y != x) out.push_back({x, static_cast<Element>(y)});
      });
    }
    return out;
  }

 private:
  void check_index(Element x) const {
    if (x >= size()) {
      throw std::out_of_range("lattice element " + std::to_string(x) + " out of range (size " +
                              std::to_string(size()) + ")");
    }
  }
  void finish_derived();

  LatticeParts parts_;
  BitMatrix down_;
  BitMatrix cover_matrix_;
  std::vector<std::size_t> heights_;
};

namespace detail {

// Covering pairs of a reflexive order: y covers x iff x < y and nothing
// lies strictly between.
inline std::vector<Arrow> covers_of(const BitMatrix& leq, const BitMatrix& down) {
  std::vector<Arrow> out;
  const std::size_t n = leq.rows();
  for (Element x = 0; x < n; ++x) {
    Bitset strict_up = leq.row(x);
    strict_up.reset(x);
    strict_up.for_each([&](std::size_t y) {
      Bitset between = strict_up & down.row(y);
      between.reset(y);
      if (between.none()) out.push_back({x, static_cast<Element>(y)});
    });
  }
  return out;
}

// Warshall closure on a bit matrix.
inline void transitive_close(BitMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Bitset rk = m.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      if (m.test(i, k)) m.row(i) |= rk;
    }
  }
}

}  // namespace detail

inline void FiniteLattice::finish_derived() {
  const std::size_t n = size();
  down_ = parts_.leq.transposed();
  cover_matrix_ = BitMatrix(n, n);
  for (const Arrow& c : parts_.covers) {
    if (c.source < n && c.target < n) cover_matrix_.set(c.source, c.target);
  }
  // Heights by longest path over covers, in order of increasing down-set size.
  heights_.assign(n, 0);
  std::vector<Element> order(n);
  for (Element i = 0; i < n; ++i) order[i] = i;
  std::vector<std::size_t> down_count(n);
  for (Element i = 0; i < n; ++i) down_count[i] = down_.row(i).count();
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return down_count[a] < down_count[b]; });
  std::vector<std::vector<Element>> lower_covers(n);
  for (const Arrow& c : parts_.covers) {
    if (c.source < n && c.target < n) lower_covers[c.target].push_back(c.source);
  }
  for (Element y : order) {
    for (Element x : lower_covers[y]) heights_[y] = std::max(heights_[y], heights_[x] + 1);
  }
}

inline FiniteLattice FiniteLattice::from_order(BitMatrix leq, std::vector<std::string> labels) {
  const std::size_t n = leq.rows();
  if (n == 0) throw NotALatticeError("a lattice needs at least one element", 0, 0);
  if (leq.cols() != n) throw Error("order matrix must be square");
  for (std::size_t i = 0; i < n; ++i) leq.set(i, i);
  BitMatrix down = leq.transposed();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (leq.test(x, y) && leq.test(y, x)) {
        throw NotALatticeError("order is not antisymmetric: " + std::to_string(x) +
                                   " <= " + std::to_string(y) + " <= " + std::to_string(x),
                               x, y);
      }
    }
  }
  std::vector<std::size_t> up_count(n), down_count(n);
  for (std::size_t i = 0; i < n; ++i) {
    up_count[i] = leq.row(i).count();
    down_count[i] = down.row(i).count();
  }

  LatticeParts parts;
  parts.meet_table.assign(n, std::vector<Element>(n));
  parts.join_table.assign(n, std::vector<Element>(n));
  // The meet of x,y is the lower bound whose down-set is the whole set of
  // lower bounds; it is also the lower bound with the largest down-set.
  auto extremal = [](const Bitset& bounds, const std::vector<std::size_t>& counts,
                     const BitMatrix& sets) -> std::optional<Element> {
    std::size_t best = bounds.size();
    std::size_t best_count = 0;
    bounds.for_each([&](std::size_t z) {
      if (best == bounds.size() || counts[z] > best_count) {
        best = z;
        best_count = counts[z];
      }
    });
    if (best == bounds.size() || !(sets.row(best) == bounds)) return std::nullopt;
    return static_cast<Element>(best);
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      auto m = extremal(down.row(x) & down.row(y), down_count, down);
      if (!m) {
        throw NotALatticeError("elements " + std::to_string(x) + " and " + std::to_string(y) +
                                   " have no meet",
                               x, y);
      }
      auto j = extremal(leq.row(x) & leq.row(y), up_count, leq);
      if (!j) {
        throw NotALatticeError("elements " + std::to_string(x) + " and " + std::to_string(y) +
                                   " have no join",
                               x, y);
      }
      parts.meet_table[x][y] = parts.meet_table[y][x] = *m;
      parts.join_table[x][y] = parts.join_table[y][x] = *j;
    }
  }
  Element bottom = 0, top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (up_count[i] == n) bottom = static_cast<Element>(i);
    if (down_count[i] == n) top = static_cast<Element>(i);
  }
  parts.bottom = bottom;
  parts.top = top;
  parts.covers = detail::covers_of(leq, down);
  parts.leq = std::move(leq);
  if (!labels.empty()) {
    labels.resize(n);
    parts.labels = std::move(labels);
  }
  return from_parts(std::move(parts));
}

inline FiniteLattice FiniteLattice::from_covers(std::size_t size, const std::vector<Arrow>& edges,
                                               std::vector<std::string> labels) {
  BitMatrix leq(size, size);
  for (std::size_t i = 0; i < size; ++i) leq.set(i, i);
  for (const Arrow& e : edges) {
    if (e.source >= size || e.target >= size) {
      throw Error("cover (" + std::to_string(e.source) + "," + std::to_string(e.target) +
                  ") out of range");
    }
    leq.set(e.source, e.target);
  }
  detail::transitive_close(leq);
  return from_order(std::move(leq), std::move(labels));
}

// ---------------------------------------------------------------------------
// Validation

struct Diagnostic {
  std::string law;
  std::vector<Element> witness;

  std::string to_string() const {
    std::string s = law + " (";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(witness[i]);
    }
    return s + ")";
  }
};

struct Diagnostics {
  std::vector<Diagnostic> violations;
  /// Informational, e.g. skipped exhaustive checks.
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }
  bool empty() const noexcept { return violations.empty(); }
};

inline constexpr std::size_t kExhaustiveValidationLimit = 512;

/// Checks every FiniteLattice invariant, reporting each violated law once with
/// a witness. Triple-quantified laws are skipped above 512 elements.
inline Diagnostics validate(const FiniteLattice& L) {
  Diagnostics d;
  const auto& p = L.parts();
  const std::size_t n = p.leq.rows();
  if (n == 0) {
    d.violations.push_back({"empty lattice", {}});
    return d;
  }
  auto once = [&](const std::string& law, std::vector<Element> w) {
    for (const auto& v : d.violations) {
      if (v.law == law) return;
    }
    d.violations.push_back({law, std::move(w)});
  };
  auto le = [&](std::size_t a, std::size_t b) { return p.leq.test(a, b); };
  const bool tables_ok = p.meet_table.size() == n && p.join_table.size() == n &&
                         std::all_of(p.meet_table.begin(), p.meet_table.end(),
                                     [&](const auto& r) { return r.size() == n; }) &&
                         std::all_of(p.join_table.begin(), p.join_table.end(),
                                     [&](const auto& r) { return r.size() == n; });
  if (!tables_ok) once("meet/join table shape", {});

  for (Element x = 0; x < n; ++x) {
    if (!le(x, x)) once("reflexivity", {x});
    for (Element y = 0; y < n; ++y) {
      if (x != y && le(x, y) && le(y, x)) once("antisymmetry", {x, y});
    }
    if (p.bottom >= n || !le(p.bottom, x)) once("bottom", {p.bottom, x});
    if (p.top >= n || !le(x, p.top)) once("top", {x, p.top});
  }

  // Covers: exactly the pairs with an empty open interval.
  {
    std::vector<Arrow> expected;
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (x == y || !le(x, y)) continue;
        bool between = false;
        for (Element z = 0; z < n && !between; ++z) {
          between = z != x && z != y && le(x, z) && le(z, y);
        }
        if (!between) expected.push_back({x, y});
      }
    }
    std::vector<Arrow> got = p.covers;
    std::sort(got.begin(), got.end());
    if (got != expected) {
      std::vector<Arrow> diff;
      std::set_symmetric_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                                    std::back_inserter(diff));
      once("covering relation", {diff.front().source, diff.front().target});
    }
  }

  if (n > kExhaustiveValidationLimit) {
    d.notes.push_back("exhaustive triple checks skipped above " +
                      std::to_string(kExhaustiveValidationLimit) + " elements");
    return d;
  }

  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (!le(x, y)) continue;
      for (Element z = 0; z < n; ++z) {
        if (le(y, z) && !le(x, z)) once("transitivity", {x, y, z});
      }
    }
  }
  if (!tables_ok) return d;
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const Element m = p.meet_table[x][y];
      const Element j = p.join_table[x][y];
      if (m >= n || j >= n) {
        once("table entry out of range", {x, y});
        continue;
      }
      if (m != p.meet_table[y][x]) once("meet commutativity", {x, y});
      if (j != p.join_table[y][x]) once("join commutativity", {x, y});
      if (x == y && (m != x || j != x)) once("idempotence", {x});
      if (!le(m, x) || !le(m, y)) once("meet is a lower bound", {x, y, m});
      if (!le(x, j) || !le(y, j)) once("join is an upper bound", {x, y, j});
      for (Element z = 0; z < n; ++z) {
        if (le(z, x) && le(z, y) && !le(z, m)) once("meet is greatest", {x, y, z});
        if (le(x, z) && le(y, z) && !le(j, z)) once("join is least", {x, y, z});
        const Element mz = p.meet_table[m][z];
        if (mz < n && p.meet_table[y][z] < n && mz != p.meet_table[x][p.meet_table[y][z]]) {
          once("meet associativity", {x, y, z});
        }
        const Element jz = p.join_table[j][z];
        if (jz < n && p.join_table[y][z] < n && jz != p.join_table[x][p.join_table[y][z]]) {
          once("join associativity", {x, y, z});
        }
      }
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Structural operations

inline std::vector<Arrow> covering_relations(const FiniteLattice& L) { return L.covers(); }

/// Modular law: x <= z implies x v (y ^ z) == (x v y) ^ z.
inline std::optional<std::tuple<Element, Element, Element>> modular_witness(const FiniteLattice& L) {
  const std::size_t n = L.size();
  for (Element x = 0; x < n; ++x) {
    std::optional<std::tuple<Element, Element, Element>> found;
    L.up(x).for_each([&](std::size_t zi) {
      if (found) return;
      const auto z = static_cast<Element>(zi);
      for (Element y = 0; y < n; ++y) {
        if (L.join(x, L.meet(y, z)) != L.meet(L.join(x, y), z)) {
          found = std::make_tuple(x, y, z);
          return;
        }
      }
    });
    if (found) return found;
  }
  return std::nullopt;
}

inline bool is_modular(const FiniteLattice& L) { return !modular_witness(L).has_value(); }

/// Order-dual lattice on the same element indices.
inline FiniteLattice opposite(const FiniteLattice& L) {
  const auto& p = L.parts();
  LatticeParts q;
  q.leq = p.leq.transposed();
  q.meet_table = p.join_table;
  q.join_table = p.meet_table;
  q.bottom = p.top;
  q.top = p.bottom;
  q.covers.reserve(p.covers.size());
  for (const Arrow& c : p.covers) q.covers.push_back({c.target, c.source});
  std::sort(q.covers.begin(), q.covers.end());
  q.labels = p.labels;
  return FiniteLattice::from_parts(std::move(q));
}

/// Order isomorphism search by backtracking with height/degree invariants.
/// Returns the element map from a to b when one exists.
inline std::optional<std::vector<Element>> find_isomorphism(const FiniteLattice& a,
                                                            const FiniteLattice& b) {
  const std::size_t n = a.size();
  if (n != b.size() || a.covers().size() != b.covers().size()) return std::nullopt;
  auto signature = [](const FiniteLattice& L, Element x) {
    return std::make_tuple(L.height(x), L.up(x).count(), L.down(x).count());
  };
  std::vector<Element> order(n);
  for (Element i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Element x, Element y) {
    return std::make_pair(a.down(x).count(), x) < std::make_pair(a.down(y).count(), y);
  });
  {
    std::vector<decltype(signature(a, 0))> sa, sb;
    for (Element i = 0; i < n; ++i) {
      sa.push_back(signature(a, i));
      sb.push_back(signature(b, i));
    }
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<Element> map(n, 0);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == n) return true;
    const Element x = order[k];
    for (Element y = 0; y < n; ++y) {
      if (used[y] || signature(a, x) != signature(b, y)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        const Element u = order[i];
        ok = a.leq(u, x) == b.leq(map[u], y) && a.leq(x, u) == b.leq(y, map[u]);
      }
      if (!ok) continue;
      map[x] = y;
      used[y] = true;
      if (extend(k + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

inline bool are_isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  return find_isomorphism(a, b).has_value();
}

// ---------------------------------------------------------------------------
// Text format:
//   lattice <size>
//   cover <x> <y>
//   label <x> <string>
// Blank lines and lines starting with '#' are ignored.

inline FiniteLattice parse_lattice(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> size;
  std::vector<Arrow> edges;
  std::vector<std::string> labels;
  auto parse_index = [&](std::istringstream& ss, const char* what) -> Element {
    long long v = -1;
    if (!(ss >> v)) throw ParseError(std::string("expected ") + what, lineno);
    if (v < 0 || static_cast<std::size_t>(v) >= *size) {
      throw ParseError(std::string(what) + " " + std::to_string(v) + " out of range", lineno);
    }
    return static_cast<Element>(v);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string keyword;
    if (!(ss >> keyword) || keyword[0] == '#') continue;
    if (keyword == "lattice") {
      if (size) throw ParseError("duplicate 'lattice' header", lineno);
      long long v = -1;
      if (!(ss >> v) || v <= 0) throw ParseError("expected positive element count", lineno);
      size = static_cast<std::size_t>(v);
    } else if (!size) {
      throw ParseError("first directive must be 'lattice <size>'", lineno);
    } else if (keyword == "cover") {
      const Element x = parse_index(ss, "element");
      const Element y = parse_index(ss, "element");
      edges.push_back({x, y});
    } else if (keyword == "label") {
      const Element x = parse_index(ss, "element");
      std::string rest;
      std::getline(ss >> std::ws, rest);
      if (rest.empty()) throw ParseError("empty label", lineno);
      if (labels.empty()) labels.resize(*size);
      labels[x] = rest;
    } else {
      throw ParseError("unknown directive '" + keyword + "'", lineno);
    }
    std::string trailing;
    if (keyword != "label" && (ss >> trailing)) {
      throw ParseError("unexpected trailing token '" + trailing + "'", lineno);
    }
  }
  if (!size) throw ParseError("missing 'lattice <size>' header", lineno);
  return FiniteLattice::from_covers(*size, edges, std::move(labels));
}

inline void write_lattice(std::ostream& out, const FiniteLattice& L) {
  out << "lattice " << L.size() << '\n';
  for (const Arrow& c : L.covers()) out << "cover " << c.source << ' ' << c.target << '\n';
  if (L.has_labels()) {
    for (Element x = 0; x < L.size(); ++x) out << "label " << x << ' ' << L.label(x) << '\n';
  }
}

}  // namespace satfca
