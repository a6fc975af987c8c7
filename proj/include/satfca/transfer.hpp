#pragma once

// Transfer systems, cotransfer systems, saturation, lifting classes and
// saturated covers on a finite lattice.

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "satfca/bitset.hpp"
#include "satfca/errors.hpp"
#include "satfca/lattice.hpp"

namespace satfca {

/// A set of comparable pairs of a lattice, stored as a square bit matrix
/// (arrows(x, y) may only be set when x <= y). Holds a non-owning pointer to
/// the lattice, which must outlive it.
class ArrowSet {
 public:
  explicit ArrowSet(const FiniteLattice& L) : lattice_(&L), arrows_(L.size(), L.size()) {}

  static ArrowSet identities(const FiniteLattice& L) {
    ArrowSet s(L);
    for (Element x = 0; x < L.size(); ++x) s.arrows_.set(x, x);
    return s;
  }
  /// Every comparable pair.
  static ArrowSet complete(const FiniteLattice& L) {
    ArrowSet s(L);
    s.arrows_ = L.order();
    return s;
  }
  /// Throws PreconditionError if some arrow is not a comparable pair.
  static ArrowSet of(const FiniteLattice& L, const std::vector<Arrow>& arrows) {
    ArrowSet s(L);
    for (const Arrow& a : arrows) s.insert(a);
    return s;
  }

  const FiniteLattice& lattice() const noexcept { return *lattice_; }
  std::size_t lattice_size() const noexcept { return arrows_.rows(); }

  bool contains(Element x, Element y) const noexcept { return arrows_.test(x, y); }
  bool contains(Arrow a) const noexcept { return contains(a.source, a.target); }

  void insert(Arrow a) {
    if (a.source >= lattice_size() || a.target >= lattice_size() ||
        !lattice_->leq(a.source, a.target)) {
      throw PreconditionError("arrow " + std::to_string(a.source) + "->" +
                              std::to_string(a.target) + " is not a relation of the lattice");
    }
    arrows_.set(a.source, a.target);
  }
  void erase(Arrow a) noexcept { arrows_.set(a.source, a.target, false); }

  /// Targets reachable from x by one arrow.
  const Bitset& targets(Element x) const noexcept { return arrows_.row(x); }
  const BitMatrix& matrix() const noexcept { return arrows_; }
  BitMatrix& matrix() noexcept { return arrows_; }

  std::size_t size() const noexcept { return arrows_.count(); }

  /// Lexicographic (source, target).
  std::vector<Arrow> arrows(bool include_identities = true) const {
    std::vector<Arrow> out;
    for (Element x = 0; x < lattice_size(); ++x) {
      arrows_.row(x).for_each([&](std::size_t y) {
        if (include_identities || y != x) out.push_back({x, static_cast<Element>(y)});
      });
    }
    return out;
  }

  bool is_subset_of(const ArrowSet& o) const noexcept { return arrows_.is_subset_of(o.arrows_); }

  ArrowSet& operator&=(const ArrowSet& o) {
    for (std::size_t r = 0; r < lattice_size(); ++r) arrows_.row(r) &= o.arrows_.row(r);
    return *this;
  }
  ArrowSet& operator|=(const ArrowSet& o) {
    for (std::size_t r = 0; r < lattice_size(); ++r) arrows_.row(r) |= o.arrows_.row(r);
    return *this;
  }
  friend ArrowSet operator&(ArrowSet a, const ArrowSet& b) { return a &= b; }
  friend ArrowSet operator|(ArrowSet a, const ArrowSet& b) { return a |= b; }

  friend bool operator==(const ArrowSet& a, const ArrowSet& b) { return a.arrows_ == b.arrows_; }

  /// Same arrows with source and target swapped, viewed on `target_lattice`
  /// (normally the opposite lattice).
  ArrowSet reversed(const FiniteLattice& target_lattice) const {
    ArrowSet r(target_lattice);
    r.arrows_ = arrows_.transposed();
    return r;
  }

 private:
  const FiniteLattice* lattice_;
  BitMatrix arrows_;
};

/// `arrow <x> <y>` per line, lexicographic, identities included.
inline void write_arrow_set(std::ostream& out, const ArrowSet& T) {
  for (const Arrow& a : T.arrows()) out << "arrow " << a.source << ' ' << a.target << '\n';
}

namespace detail {

inline bool refines_order(const ArrowSet& T) { return T.matrix().is_subset_of(T.lattice().order()); }

inline bool is_reflexive(const ArrowSet& T) {
  for (Element x = 0; x < T.lattice_size(); ++x) {
    if (!T.contains(x, x)) return false;
  }
  return true;
}

inline bool is_transitive(const ArrowSet& T) {
  for (Element x = 0; x < T.lattice_size(); ++x) {
    const Bitset& tx = T.targets(x);
    bool ok = true;
    tx.for_each([&](std::size_t y) {
      if (ok && !T.targets(static_cast<Element>(y)).is_subset_of(tx)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline void reflexive_transitive_close(ArrowSet& T) {
  for (Element x = 0; x < T.lattice_size(); ++x) T.matrix().set(x, x);
  transitive_close(T.matrix());
}

inline void check_arrows_in_order(const ArrowSet& S) {
  if (!refines_order(S)) throw PreconditionError("arrow set contains a pair x->y with x not <= y");
}

}  // namespace detail

/// Reflexive, transitive, refines <=, and x->y with z <= y gives x^z -> z.
inline bool is_transfer_system(const ArrowSet& T) {
  if (!detail::refines_order(T) || !detail::is_reflexive(T) || !detail::is_transitive(T)) {
    return false;
  }
  const FiniteLattice& L = T.lattice();
  for (const Arrow& a : T.arrows(false)) {
    bool ok = true;
    L.down(a.target).for_each([&](std::size_t z) {
      if (ok && !T.contains(L.meet(a.source, static_cast<Element>(z)), static_cast<Element>(z))) {
        ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

/// Dual axioms: x->y with x <= z gives z -> y v z.
inline bool is_cotransfer_system(const ArrowSet& T) {
  if (!detail::refines_order(T) || !detail::is_reflexive(T) || !detail::is_transitive(T)) {
    return false;
  }
  const FiniteLattice& L = T.lattice();
  for (const Arrow& a : T.arrows(false)) {
    bool ok = true;
    L.up(a.source).for_each([&](std::size_t z) {
      if (ok && !T.contains(static_cast<Element>(z), L.join(a.target, static_cast<Element>(z)))) {
        ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

/// For a transfer system, saturation reduces to: x->z and x <= y <= z give y->z.
/// Throws PreconditionError when T is not a transfer system.
inline bool is_saturated(const ArrowSet& T) {
  if (!is_transfer_system(T)) throw PreconditionError("is_saturated: not a transfer system");
  const FiniteLattice& L = T.lattice();
  for (const Arrow& a : T.arrows(false)) {
    const Bitset between = L.up(a.source) & L.down(a.target);
    bool ok = true;
    between.for_each([&](std::size_t y) {
      if (ok && !T.contains(static_cast<Element>(y), a.target)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

/// Smallest transfer system containing S: restrict every a->b in S along all
/// z <= b (giving z^a -> z), then take the reflexive-transitive closure.
inline ArrowSet generate_transfer(const FiniteLattice& L, const ArrowSet& S) {
  detail::check_arrows_in_order(S);
  ArrowSet T(L);
  for (const Arrow& a : S.arrows()) {
    L.down(a.target).for_each([&](std::size_t zi) {
      const auto z = static_cast<Element>(zi);
      T.matrix().set(L.meet(z, a.source), z);
    });
  }
  detail::reflexive_transitive_close(T);
  return T;
}

inline ArrowSet generate_transfer(const FiniteLattice& L, const std::vector<Arrow>& S) {
  return generate_transfer(L, ArrowSet::of(L, S));
}

/// Smallest cotransfer system containing S, computed as a transfer system on
/// the opposite lattice with every arrow reversed.
inline ArrowSet generate_cotransfer(const FiniteLattice& L, const ArrowSet& S) {
  detail::check_arrows_in_order(S);
  const FiniteLattice op = opposite(L);
  return generate_transfer(op, S.reversed(op)).reversed(L);
}

inline ArrowSet generate_cotransfer(const FiniteLattice& L, const std::vector<Arrow>& S) {
  return generate_cotransfer(L, ArrowSet::of(L, S));
}

/// T-natural: {b->c : b <= c and a->c in T for some a <= b}. For a transfer
/// system this is already the saturated transfer system it generates.
inline ArrowSet saturate(const ArrowSet& T) {
  if (!is_transfer_system(T)) throw PreconditionError("saturate: not a transfer system");
  const FiniteLattice& L = T.lattice();
  const BitMatrix sources = T.matrix().transposed();  // sources.row(c) = {a : a->c}
  ArrowSet out(L);
  for (Element c = 0; c < L.size(); ++c) {
    Bitset above_a_source(L.size());
    sources.row(c).for_each([&](std::size_t a) { above_a_source |= L.up(static_cast<Element>(a)); });
    above_a_source &= L.down(c);
    above_a_source.for_each([&](std::size_t b) { out.matrix().set(b, c); });
  }
  return out;
}

/// (f, g) has the lifting property, f = x->y, g = x'->y':
/// x <= x' and y <= y' imply y <= x'.
inline bool has_lifting_property(const FiniteLattice& L, Arrow f, Arrow g) {
  return !(L.leq(f.source, g.source) && L.leq(f.target, g.target)) || L.leq(f.target, g.source);
}

/// Right lifting class {f : g lifts against f for all g in X}.
inline ArrowSet right_lift(const FiniteLattice& L, const ArrowSet& X) {
  detail::check_arrows_in_order(X);
  const std::vector<Arrow> gs = X.arrows();
  ArrowSet out(L);
  for (const Arrow& f : L.comparable_pairs()) {
    if (std::all_of(gs.begin(), gs.end(), [&](Arrow g) { return has_lifting_property(L, g, f); })) {
      out.matrix().set(f.source, f.target);
    }
  }
  return out;
}

/// Left lifting class {f : f lifts against g for all g in X}.
inline ArrowSet left_lift(const FiniteLattice& L, const ArrowSet& X) {
  detail::check_arrows_in_order(X);
  const std::vector<Arrow> gs = X.arrows();
  ArrowSet out(L);
  for (const Arrow& f : L.comparable_pairs()) {
    if (std::all_of(gs.begin(), gs.end(), [&](Arrow g) { return has_lifting_property(L, f, g); })) {
      out.matrix().set(f.source, f.target);
    }
  }
  return out;
}

inline ArrowSet right_lift(const FiniteLattice& L, const std::vector<Arrow>& X) {
  return right_lift(L, ArrowSet::of(L, X));
}
inline ArrowSet left_lift(const FiniteLattice& L, const std::vector<Arrow>& X) {
  return left_lift(L, ArrowSet::of(L, X));
}

/// Closed form of the meet-irreducible saturated transfer system indexed by
/// y != bottom: {a->b : y not <= b or y <= a}.
inline ArrowSet principal_meet_irreducible(const FiniteLattice& L, Element y) {
  if (y >= L.size()) throw std::out_of_range("element out of range");
  if (y == L.bottom()) throw PreconditionError("principal_meet_irreducible: y must not be bottom");
  ArrowSet out(L);
  for (const Arrow& f : L.comparable_pairs()) {
    if (!L.leq(y, f.target) || L.leq(y, f.source)) out.matrix().set(f.source, f.target);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Saturated covers

/// A set of covering relations of a modular lattice closed under Restriction
/// and 3-out-of-4. Holds a non-owning lattice pointer.
struct SaturatedCover {
  const FiniteLattice* lattice = nullptr;
  std::vector<Arrow> edges;  // sorted
};

/// First violated saturated-cover axiom, if any.
inline std::optional<std::string> saturated_cover_violation(const FiniteLattice& L,
                                                            const std::vector<Arrow>& edges) {
  BitMatrix in(L.size(), L.size());
  for (const Arrow& e : edges) {
    if (e.source >= L.size() || e.target >= L.size() || !L.is_cover(e.source, e.target)) {
      return "Covering: " + std::to_string(e.source) + "->" + std::to_string(e.target) +
             " is not a covering relation";
    }
    in.set(e.source, e.target);
  }
  // Restriction: x -> x v y implies x ^ y -> y.
  for (const Arrow& e : edges) {
    for (Element y = 0; y < L.size(); ++y) {
      if (L.join(e.source, y) != e.target) continue;
      const Element m = L.meet(e.source, y);
      if (!in.test(m, y)) {
        return "Restriction: " + std::to_string(e.source) + "->" + std::to_string(e.target) +
               " present but " + std::to_string(m) + "->" + std::to_string(y) + " absent";
      }
    }
  }
  // 3-out-of-4 on every diamond x ^ y < x, y < x v y.
  for (Element x = 0; x < L.size(); ++x) {
    for (Element y = x + 1; y < L.size(); ++y) {
      const Element m = L.meet(x, y);
      if (!L.is_cover(m, x) || !L.is_cover(m, y)) continue;
      const Element j = L.join(x, y);
      const int present = in.test(m, x) + in.test(m, y) + in.test(x, j) + in.test(y, j);
      if (present == 3) {
        return "3-out-of-4: exactly three edges of the square " + std::to_string(m) + "," +
               std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(j);
      }
    }
  }
  return std::nullopt;
}

/// Covering relations contained in a saturated transfer system.
inline SaturatedCover to_saturated_cover(const ArrowSet& T) {
  if (!is_saturated(T)) throw PreconditionError("to_saturated_cover: not saturated");
  const FiniteLattice& L = T.lattice();
  SaturatedCover S{&L, {}};
  for (const Arrow& c : L.covers()) {
    if (T.contains(c)) S.edges.push_back(c);
  }
  return S;
}

/// The transfer system generated by a saturated cover. Defined only on modular
/// lattices; throws PreconditionError otherwise or on an invalid cover.
inline ArrowSet from_saturated_cover(const SaturatedCover& S) {
  if (S.lattice == nullptr) throw PreconditionError("from_saturated_cover: no lattice");
  const FiniteLattice& L = *S.lattice;
  if (!is_modular(L)) {
    throw PreconditionError("from_saturated_cover: saturated covers require a modular lattice");
  }
  if (auto v = saturated_cover_violation(L, S.edges)) {
    throw PreconditionError("from_saturated_cover: " + *v);
  }
  return generate_transfer(L, S.edges);
}

}  // namespace satfca
