#include <gtest/gtest.h>

#include "support.hpp"

using namespace satfca;
using namespace satfca::qstats;

namespace {

const std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13};

// Product formula prod_{j<i} (p^n - p^j) / (p^i - p^j), divided once at the end.
BigNat qbinom_product(std::uint64_t n, std::uint64_t i, std::uint64_t p) {
  BigNat num = 1, den = 1;
  for (std::uint64_t j = 0; j < i; ++j) {
    num *= power(p, n) - power(p, j);
    den *= power(p, i) - power(p, j);
  }
  EXPECT_EQ(num % den, 0);
  return num / den;
}

}  // namespace

TEST(Qstats, GaussianBinomialValues) {
  EXPECT_EQ(qbinom(3, 1, 5), 31);
  EXPECT_EQ(qbinom(3, 2, 5), 31);
  EXPECT_EQ(qbinom(4, 2, 2), 35);
  EXPECT_EQ(qbinom(7, 0, 3), 1);
  EXPECT_EQ(qbinom(2, 3, 2), 0);
  EXPECT_THROW(qbinom(2, 1, 1), PreconditionError);
  for (std::uint64_t p : kPrimes) {
    for (std::uint64_t n = 0; n <= 8; ++n) {
      EXPECT_EQ(qbinom(n, 1, p), (power(p, n) - 1) / (p - 1));
      for (std::uint64_t i = 0; i <= n; ++i) {
        EXPECT_EQ(qbinom(n, i, p), qbinom(n, n - i, p));
        EXPECT_EQ(qbinom(n, i, p), qbinom_product(n, i, p));
      }
    }
  }
}

TEST(Qstats, SubspaceTotals) {
  for (std::uint64_t p : kPrimes) {
    EXPECT_EQ(a(0, p), 1);
    EXPECT_EQ(a(1, p), 2);
    EXPECT_EQ(a(2, p), p + 3);
    EXPECT_EQ(a(3, p), 2 * p * p + 2 * p + 4);
    for (std::uint64_t n = 0; n <= 12; ++n) EXPECT_EQ(a_rec(n, p), a_direct(n, p)) << n << "," << p;
  }
  EXPECT_EQ(a(3, 5), 64);
}

TEST(Qstats, IrreducibleCounts) {
  EXPECT_EQ(count_meet_irr(1, 7), 1);
  EXPECT_EQ(count_meet_irr(3, 5), 63);
  EXPECT_EQ(count_join_irr(1, 7), 1);
  EXPECT_EQ(count_join_irr(3, 5), 248);
  for (std::uint64_t p : kPrimes) {
    for (std::uint64_t n = 1; n <= 8; ++n) {
      EXPECT_EQ(count_meet_irr(n, p), a(n, p) - 1);
      EXPECT_EQ(count_join_irr(n, p), count_join_irr_sum(n, p));
      EXPECT_EQ(count_join_irr(n, p), count_join_irr_codim_sum(n, p));
    }
  }
  EXPECT_THROW(count_meet_irr(0, 2), PreconditionError);
  EXPECT_THROW(count_join_irr(0, 2), PreconditionError);
  EXPECT_THROW(count_zeros(0, 2), PreconditionError);
  EXPECT_THROW(density_formula(0, 2), PreconditionError);
}

TEST(Qstats, ZerosAndDensity) {
  EXPECT_EQ(count_zeros(1, 5), 1);
  EXPECT_EQ(count_zeros(2, 2), 12);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 97}) {
    EXPECT_EQ(density_formula(2, p), ExactRational(1, 2)) << p;
    EXPECT_EQ(density_formula(1, p), 0);
  }
  for (std::uint64_t p : kPrimes) {
    for (std::uint64_t n = 1; n <= 8; ++n) {
      const ExactRational d = density_formula(n, p);
      EXPECT_GE(d, 0);
      EXPECT_LE(d, 1);
    }
  }
}

TEST(Qstats, DensityTrends) {
  for (std::uint64_t n = 2; n < 6; ++n) EXPECT_LT(density_formula(n, 2), density_formula(n + 1, 2)) << n;
  const std::uint64_t ps[] = {2, 3, 5, 7, 11};
  for (std::size_t i = 0; i + 1 < 5; ++i) EXPECT_LT(density_formula(3, ps[i]), density_formula(3, ps[i + 1]));
}

TEST(Qstats, Bounds) {
  for (std::uint64_t p : kPrimes) {
    for (std::uint64_t n = 0; n <= 8; ++n) EXPECT_TRUE(check_bounds(n, p)) << n << "," << p;
  }
  // 25 <= 64 <= 5^4.2025, checked as 5^8 <= 64^4 and 64^400 <= 5^1681.
  EXPECT_TRUE(power(5, 8) <= boost::multiprecision::pow(BigNat(64), 4));
  EXPECT_TRUE(boost::multiprecision::pow(BigNat(64), 400) <= power(5, 1681));
  EXPECT_TRUE(check_bounds_detail(1, 2).lower);
  EXPECT_TRUE(check_bounds_detail(1, 2).upper);
}

TEST(Qstats, PowerInequality) {
  for (std::uint64_t m = 2; m <= 13; ++m) {
    for (std::uint64_t n = 3; n <= 8; ++n) EXPECT_TRUE(power_inequality_holds(m, n)) << m << "," << n;
  }
  EXPECT_THROW(power_inequality_holds(1, 3), PreconditionError);
  EXPECT_THROW(power_inequality_holds(2, 2), PreconditionError);
}

TEST(Qstats, FormulasMatchConstructedContexts) {
  for (auto [p, n] : {std::pair<std::uint32_t, std::size_t>{2, 3}, {3, 2}, {5, 2}, {2, 2}}) {
    const FormalContext C = sat_context(subspace_lattice(p, n));
    EXPECT_EQ(BigNat(C.attributes()), count_meet_irr(n, p));
    EXPECT_EQ(BigNat(C.objects()), count_join_irr(n, p));
    EXPECT_EQ(BigNat(C.objects() * C.attributes() - C.incidence().count()), count_zeros(n, p));
  }
}
