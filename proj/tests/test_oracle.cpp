#include <gtest/gtest.h>

#include "support.hpp"

using namespace satfca;
using satfca::testing::all_lattices;

TEST(Oracle, SaturatedCountsOnChains) {
  for (std::size_t n = 1; n <= 10; ++n) {
    EXPECT_EQ(enumerate_saturated_brute(chain(n)).count, qstats::power(2, n)) << n;
  }
}

TEST(Oracle, SaturatedCountsOnDiamonds) {
  EXPECT_EQ(enumerate_saturated_brute(diamond(3)).count, 12);
  EXPECT_EQ(enumerate_saturated_brute(subspace_lattice(2, 2)).count, 12);
  EXPECT_EQ(enumerate_saturated_brute(diamond(4)).count, 21);
  // 2^(k+1) + (k+1) + 1 for M_{k+1} = Sub(F_p^2), k = p.
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
    const std::size_t atoms = p + 1;
    EXPECT_EQ(enumerate_saturated_brute(diamond(atoms)).count, qstats::power(2, atoms) + atoms + 1) << p;
  }
  EXPECT_EQ(enumerate_saturated_brute(diamond(6)).count, 71);
}

TEST(Oracle, TransferCounts) {
  const std::uint64_t catalan[] = {2, 5, 14, 42, 132};
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(enumerate_transfer_brute(chain(n)).count, catalan[n - 1]);
  EXPECT_EQ(enumerate_transfer_brute(diamond(3)).count, 19);
  EXPECT_EQ(enumerate_transfer_brute(diamond(4)).count, 36);
}

TEST(Oracle, CapsAreErrors) {
  EXPECT_THROW(enumerate_saturated_brute(subspace_lattice(2, 3)), CapExceededError);
  OracleOptions big;
  big.cap = 40;
  EXPECT_EQ(enumerate_saturated_brute(subspace_lattice(2, 3), big).count, 3616);
  EXPECT_THROW(enumerate_transfer_brute(chain(6)), CapExceededError);
  EXPECT_THROW(closure_count_oracle(FormalContext::from_matrix(BitMatrix(2, 21))), CapExceededError);
  OracleOptions small;
  small.cap = 3;
  EXPECT_THROW(enumerate_saturated_brute(chain(4), small), CapExceededError);
  EXPECT_THROW(enumerate_saturated_brute(pentagon()), PreconditionError);
}

TEST(Oracle, WitnessesAreSaturatedAndDistinct) {
  for (const FiniteLattice& L : all_lattices(7)) {
    if (L.size() < 2 || !is_modular(L)) continue;
    OracleOptions o;
    o.collect_witnesses = true;
    const EnumerationReport r = enumerate_saturated_brute(L, o);
    ASSERT_EQ(BigNat(r.witnesses.size()), r.count);
    std::set<std::vector<Arrow>> distinct;
    for (const ArrowSet& T : r.witnesses) {
      ASSERT_TRUE(is_saturated(T));
      distinct.insert(T.arrows());
    }
    EXPECT_EQ(distinct.size(), r.witnesses.size());
    // Every saturated transfer system shows up.
    std::size_t saturated = 0;
    for (const ArrowSet& T : satfca::testing::all_transfer_systems(L)) saturated += is_saturated(T);
    EXPECT_EQ(saturated, r.witnesses.size());
  }
}

TEST(Oracle, WitnessCapDropsWitnessesButKeepsCount) {
  OracleOptions o;
  o.collect_witnesses = true;
  o.witness_cap = 3;
  const EnumerationReport r = enumerate_saturated_brute(chain(3), o);
  EXPECT_EQ(r.count, 8);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(Oracle, TransferWitnessesAreTransferSystems) {
  for (const FiniteLattice& L : all_lattices(6)) {
    OracleOptions o;
    o.collect_witnesses = true;
    const EnumerationReport r = enumerate_transfer_brute(L, o);
    ASSERT_EQ(BigNat(r.witnesses.size()), r.count);
    for (const ArrowSet& T : r.witnesses) ASSERT_TRUE(is_transfer_system(T));
  }
}

TEST(Oracle, TransferCountMatchesExhaustiveSubsets) {
  for (const FiniteLattice& L : all_lattices(5)) {
    const auto pairs = L.comparable_pairs(false);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      ArrowSet T = ArrowSet::identities(L);
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if ((mask >> b) & 1u) T.insert(pairs[b]);
      }
      count += is_transfer_system(T);
    }
    EXPECT_EQ(enumerate_transfer_brute(L).count, count);
  }
}

TEST(Oracle, LatticeOfArrowSets) {
  OracleOptions o;
  o.collect_witnesses = true;
  const auto systems = enumerate_saturated_brute(chain(2), o).witnesses;
  const FiniteLattice B = lattice_of_arrow_sets(systems);
  EXPECT_EQ(B.size(), 4u);
  EXPECT_TRUE(are_isomorphic(B, satfca::testing::closure_system({0, 1, 2, 3}, 2)));
  const FiniteLattice Tr = lattice_of_arrow_sets(enumerate_transfer_brute(chain(2), o).witnesses);
  EXPECT_EQ(Tr.size(), 5u);
}

TEST(Oracle, ThreeRoutesAgreeOnAllSmallModularLattices) {
  for (const FiniteLattice& L : all_lattices(8)) {
    if (L.size() < 2 || !is_modular(L)) continue;
    const FormalContext C = sat_context(L);
    const BigNat engine = count_concepts(C).count;
    EXPECT_EQ(enumerate_saturated_brute(L).count, engine);
    EXPECT_EQ(closure_count_oracle(C).count, engine);
  }
}

TEST(Oracle, TransferContextAgreesOnSmallLattices) {
  for (const FiniteLattice& L : all_lattices(6)) {
    if (L.size() < 2) continue;
    EXPECT_EQ(count_concepts(tr_context(L)).count, enumerate_transfer_brute(L).count);
  }
}
