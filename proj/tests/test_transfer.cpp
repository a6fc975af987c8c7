#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace satfca;
using satfca::testing::all_lattices;
using satfca::testing::all_transfer_systems;

namespace {

ArrowSet with_identities(const FiniteLattice& L, std::vector<Arrow> arrows) {
  ArrowSet T = ArrowSet::identities(L);
  for (const Arrow& a : arrows) T.insert(a);
  return T;
}

const std::vector<FiniteLattice>& small_lattices() {
  static const std::vector<FiniteLattice> lattices = all_lattices(6);
  return lattices;
}

}  // namespace

TEST(Transfer, TrivialSystems) {
  for (const FiniteLattice& L : small_lattices()) {
    EXPECT_TRUE(is_transfer_system(ArrowSet::identities(L)));
    EXPECT_TRUE(is_transfer_system(ArrowSet::complete(L)));
    EXPECT_TRUE(is_cotransfer_system(ArrowSet::identities(L)));
    EXPECT_TRUE(is_cotransfer_system(ArrowSet::complete(L)));
    EXPECT_TRUE(is_saturated(ArrowSet::complete(L)));
  }
}

TEST(Transfer, ChainExamples) {
  const FiniteLattice L = chain(2);
  EXPECT_FALSE(is_transfer_system(with_identities(L, {{0, 2}})));
  EXPECT_FALSE(is_cotransfer_system(with_identities(L, {{0, 2}})));
  EXPECT_TRUE(is_cotransfer_system(with_identities(L, {{0, 1}})));
  const ArrowSet floor02 = generate_transfer(L, {{0, 2}});
  EXPECT_EQ(floor02, with_identities(L, {{0, 1}, {0, 2}}));
  EXPECT_TRUE(is_transfer_system(floor02));
  EXPECT_FALSE(is_saturated(floor02));
  EXPECT_EQ(saturate(floor02), ArrowSet::complete(L));
  EXPECT_EQ(generate_cotransfer(L, {{0, 2}}), with_identities(L, {{0, 2}, {1, 2}}));
  EXPECT_EQ(generate_cotransfer(L, {{0, 1}}), with_identities(L, {{0, 1}}));
  EXPECT_EQ(generate_cotransfer(L, {{1, 1}}), ArrowSet::identities(L));
  EXPECT_EQ(generate_transfer(L, std::vector<Arrow>{}), ArrowSet::identities(L));
}

TEST(Transfer, NotATransferSystemIsAnError) {
  const FiniteLattice L = chain(2);
  EXPECT_THROW(is_saturated(with_identities(L, {{0, 2}})), PreconditionError);
  EXPECT_THROW(saturate(with_identities(L, {{0, 2}})), PreconditionError);
  ArrowSet T(L);
  EXPECT_THROW(T.insert({2, 0}), PreconditionError);
  EXPECT_THROW(generate_transfer(L, {{2, 1}}), PreconditionError);
}

TEST(Transfer, DiamondFloorOfBottomToTop) {
  const FiniteLattice M = diamond(3);
  EXPECT_EQ(generate_transfer(M, {{0, 4}}), with_identities(M, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
}

TEST(Transfer, LiftingClassesOnChain) {
  const FiniteLattice L = chain(2);
  EXPECT_EQ(right_lift(L, {{0, 2}}), with_identities(L, {{0, 1}}));
  EXPECT_EQ(right_lift(L, {{1, 1}}), ArrowSet::complete(L));
  EXPECT_EQ(principal_meet_irreducible(L, 2), with_identities(L, {{0, 1}}));
  EXPECT_EQ(principal_meet_irreducible(L, 1), with_identities(L, {{1, 2}}));
  EXPECT_THROW(principal_meet_irreducible(L, 0), PreconditionError);
}

TEST(Transfer, PrincipalMeetIrreducibleOnDiamond) {
  const FiniteLattice M = diamond(3);
  ArrowSet expected = ArrowSet::complete(M);
  for (Element x = 0; x < 4; ++x) expected.erase({x, 4});
  EXPECT_EQ(principal_meet_irreducible(M, 4), expected);
}

TEST(Transfer, GeneratedSystemsAreLeast) {
  for (const FiniteLattice& L : small_lattices()) {
    const auto systems = all_transfer_systems(L);
    for (const Arrow& a : L.comparable_pairs(false)) {
      const ArrowSet G = generate_transfer(L, {a});
      ASSERT_TRUE(is_transfer_system(G));
      ASSERT_TRUE(G.contains(a));
      for (const ArrowSet& T : systems) {
        if (T.contains(a)) ASSERT_TRUE(G.is_subset_of(T));
      }
      const ArrowSet Co = generate_cotransfer(L, {a});
      ASSERT_TRUE(is_cotransfer_system(Co));
      ASSERT_TRUE(Co.contains(a));
    }
  }
}

TEST(Transfer, CotransferIsTransferOnOpposite) {
  for (std::size_t k = 1; k <= 3; ++k) {
    const FiniteLattice L = chain(k);
    const FiniteLattice op = opposite(L);
    const auto pairs = L.comparable_pairs(false);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      ArrowSet T = ArrowSet::identities(L);
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if ((mask >> b) & 1u) T.insert(pairs[b]);
      }
      EXPECT_EQ(is_cotransfer_system(T), is_transfer_system(T.reversed(op)));
    }
  }
}

TEST(Transfer, GaloisConnection) {
  for (const FiniteLattice& L : small_lattices()) {
    const auto pairs = L.comparable_pairs();
    if (pairs.size() > 12) continue;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); mask += 3) {
      ArrowSet X(L), Y(L);
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if ((mask >> b) & 1u) X.insert(pairs[b]);
      }
      Y = X;
      Y.insert(pairs[mask % pairs.size()]);
      ASSERT_TRUE(right_lift(L, Y).is_subset_of(right_lift(L, X)));
      ASSERT_TRUE(X.is_subset_of(left_lift(L, right_lift(L, X))));
      ASSERT_TRUE(X.is_subset_of(right_lift(L, left_lift(L, X))));
    }
  }
}

TEST(Transfer, LiftingAdjunction) {
  for (const FiniteLattice& L : small_lattices()) {
    for (const ArrowSet& T : all_transfer_systems(L)) {
      const ArrowSet co = left_lift(L, T);
      ASSERT_TRUE(is_cotransfer_system(co));
      ASSERT_EQ(right_lift(L, co), T);
    }
  }
}

TEST(Transfer, FloorOfCoverIsCoverOnly) {
  std::vector<FiniteLattice> modular;
  for (const FiniteLattice& L : all_lattices(8)) {
    if (is_modular(L)) modular.push_back(L);
  }
  modular.push_back(subspace_lattice(2, 3));
  modular.push_back(subspace_lattice(3, 2));
  for (const FiniteLattice& L : modular) {
    for (const Arrow& c : L.covers()) {
      for (const Arrow& a : generate_transfer(L, {c}).arrows(false)) ASSERT_TRUE(L.is_cover(a.source, a.target));
    }
  }
}

TEST(Transfer, FloorIsSaturatedExactlyForCovers) {
  for (const FiniteLattice& L : all_lattices(7)) {
    if (!is_modular(L)) continue;
    for (const Arrow& a : L.comparable_pairs(false)) {
      EXPECT_EQ(is_saturated(generate_transfer(L, {a})), L.is_cover(a.source, a.target));
    }
  }
}

TEST(Transfer, PrincipalMeetIrreducibleClosedForm) {
  for (const FiniteLattice& L : all_lattices(7)) {
    for (Element y = 0; y < L.size(); ++y) {
      if (y == L.bottom()) continue;
      const ArrowSet closed = principal_meet_irreducible(L, y);
      EXPECT_EQ(closed, right_lift(L, generate_cotransfer(L, {{L.bottom(), y}})));
      EXPECT_EQ(closed, right_lift(L, {{L.bottom(), y}}));
      EXPECT_TRUE(is_saturated(closed));
    }
  }
}

TEST(Transfer, SaturationIsLeastSaturatedAbove) {
  for (const FiniteLattice& L : all_lattices(5)) {
    const auto systems = all_transfer_systems(L);
    std::vector<ArrowSet> saturated;
    for (const ArrowSet& T : systems) {
      if (is_saturated(T)) saturated.push_back(T);
    }
    for (const ArrowSet& T : systems) {
      const ArrowSet S = saturate(T);
      ASSERT_TRUE(is_saturated(S));
      ASSERT_TRUE(T.is_subset_of(S));
      ASSERT_EQ(saturate(S), S);
      for (const ArrowSet& U : saturated) {
        if (T.is_subset_of(U)) ASSERT_TRUE(S.is_subset_of(U));
      }
      for (const ArrowSet& U : systems) {
        if (T.is_subset_of(U)) ASSERT_TRUE(S.is_subset_of(saturate(U)));
      }
    }
    for (const ArrowSet& A : saturated) {
      for (const ArrowSet& B : saturated) {
        const ArrowSet I = A & B;
        ASSERT_TRUE(is_transfer_system(I));
        ASSERT_TRUE(is_saturated(I));
      }
    }
  }
}

TEST(Transfer, SaturatedCoverRoundTrip) {
  for (const FiniteLattice& L : {diamond(3), diamond(4), chain(3), subspace_lattice(2, 3)}) {
    for (const ArrowSet& T : all_transfer_systems(L)) {
      if (!is_saturated(T)) continue;
      const SaturatedCover S = to_saturated_cover(T);
      EXPECT_FALSE(saturated_cover_violation(L, S.edges).has_value());
      EXPECT_EQ(from_saturated_cover(S), T);
    }
  }
}

TEST(Transfer, SaturatedCoverExamples) {
  const FiniteLattice M = diamond(3);
  SaturatedCover all{&M, M.covers()};
  EXPECT_EQ(from_saturated_cover(all), ArrowSet::complete(M));
  SaturatedCover one{&M, {{0, 1}}};
  const ArrowSet T = from_saturated_cover(one);
  EXPECT_EQ(T, with_identities(M, {{0, 1}}));
  EXPECT_TRUE(is_saturated(T));
  const FiniteLattice C = chain(3);
  EXPECT_EQ(to_saturated_cover(ArrowSet::complete(C)).edges, C.covers());
}

TEST(Transfer, SaturatedCoverViolations) {
  const FiniteLattice M = diamond(3);
  // Not a covering relation.
  EXPECT_THROW(from_saturated_cover({&M, {{0, 4}}}), PreconditionError);
  // Restriction: 1 -> 4 = 1 v 2 needs 0 -> 2.
  EXPECT_NE(saturated_cover_violation(M, {{1, 4}})->find("Restriction"), std::string::npos);
  // Three of the square 0,1,2,4.
  EXPECT_TRUE(saturated_cover_violation(M, {{0, 1}, {0, 2}, {1, 4}}).has_value());
  const FiniteLattice N5 = pentagon();
  EXPECT_THROW(from_saturated_cover({&N5, {}}), PreconditionError);
  EXPECT_THROW(from_saturated_cover({nullptr, {}}), PreconditionError);
}

TEST(Transfer, ArrowSetSerialization) {
  const FiniteLattice L = chain(1);
  std::ostringstream out;
  write_arrow_set(out, ArrowSet::complete(L));
  EXPECT_EQ(out.str(), "arrow 0 0\narrow 0 1\narrow 1 1\n");
}
