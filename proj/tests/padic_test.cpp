#include <gtest/gtest.h>

#include <random>

#include "padicdiff/padic.hpp"

using namespace padicdiff;

namespace {

PadicNumber Z(u64 p, i128 n, int prec = 12) { return PadicNumber::from_integer(p, n, prec); }

PadicNumber random_padic(std::mt19937_64& rng, u64 p, int prec) {
  std::uniform_int_distribution<int> val(-2, 4);
  std::uniform_int_distribution<u64> unit(1, ipow(p, prec) - 1);
  if (rng() % 11 == 0) return PadicNumber::zero(p);
  u64 u = unit(rng);
  while (u % p == 0) u = unit(rng);
  return PadicNumber::from_parts(p, val(rng), u, prec);
}

}  // namespace

TEST(PadicAdd, ZeroIsNeutral) {
  auto x = Z(3, 41);
  EXPECT_TRUE((PadicNumber::zero(3) + x).identical(x));
}

TEST(PadicAdd, CarryRaisesValuation) {
  auto s = Z(3, 1) + Z(3, 2);
  EXPECT_EQ(s.valuation(), 1);
  EXPECT_EQ(s.unit(), 1u);
}

TEST(PadicAdd, ThirdsSumToOne) {
  auto s = PadicNumber::from_rational(3, 1, 3, 5) + PadicNumber::from_rational(3, 2, 3, 5);
  EXPECT_EQ(s.valuation(), 0);
  EXPECT_EQ(s.residue(s.absolute_precision()), 1u);
  // each summand is known mod 3^4, so the sum is as well
  EXPECT_EQ(s.absolute_precision(), 4);
}

TEST(PadicAdd, MismatchedPrimesRejected) {
  EXPECT_THROW(Z(3, 1) + Z(5, 1), DomainError);
}

TEST(PadicArith, RationalRoundTrip) {
  auto x = PadicNumber::from_rational(5, 7, 50, 10);
  EXPECT_EQ(x.valuation(), -2);
  auto back = x * Z(5, 50, 10);
  EXPECT_EQ(back, Z(5, 7, 10));
}

TEST(PadicArith, DivisionByInexactZeroIsPrecisionError) {
  auto z = Z(3, 5) - Z(3, 5);
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(z.is_exact_zero());
  EXPECT_THROW(Z(3, 1) / z, PrecisionError);
  EXPECT_THROW(Z(3, 1) / PadicNumber::zero(3), DomainError);
}

TEST(PadicArith, NonPrimeRejected) { EXPECT_THROW(PadicNumber::from_integer(9, 1, 4), DomainError); }

TEST(PadicProperties, UltrametricInequalityRandom) {
  std::mt19937_64 rng(7);
  for (u64 p : {2u, 3u, 5u}) {
    for (int i = 0; i < 2000; ++i) {
      auto x = random_padic(rng, p, 10);
      auto y = random_padic(rng, p, 10);
      auto s = x + y;
      EXPECT_LE(s.norm(), max_norm(x.norm(), y.norm()));
      if (x.norm() != y.norm() && !s.is_zero()) {
        EXPECT_EQ(s.norm(), max_norm(x.norm(), y.norm()));
      }
      auto prod = x * y;
      if (!prod.is_zero()) {
        EXPECT_EQ(prod.norm(), x.norm() * y.norm());
      }
    }
  }
}

TEST(FactorialValuation, Examples) {
  EXPECT_EQ(factorial_valuation(0, 3), 0);
  EXPECT_EQ(factorial_valuation(9, 3), 4);
  EXPECT_EQ(factorial_valuation(4, 2), 3);
}

TEST(FactorialValuation, MatchesBruteForceUpTo200) {
  for (u64 p : {2u, 3u, 5u, 7u}) {
    int brute = 0;
    for (u64 k = 0; k <= 200; ++k) {
      if (k > 0) brute += int_valuation(static_cast<i128>(k), p);
      EXPECT_EQ(factorial_valuation(k, p), brute) << "p=" << p << " k=" << k;
    }
  }
}

TEST(ExpLog, Trivial) {
  EXPECT_EQ(exp_scalar(PadicNumber::zero(3)), Z(3, 1));
  EXPECT_TRUE(log_scalar(Z(3, 1)).is_zero());
}

TEST(ExpLog, RoundTripAtPrecisionTen) {
  auto x = Z(3, 3, 10);
  auto y = log_scalar(exp_scalar(x));
  EXPECT_GE(y.absolute_precision(), 8);
  EXPECT_EQ(y.with_absolute_cap(8), x.with_absolute_cap(8));
}

TEST(ExpLog, DomainChecks) {
  EXPECT_THROW(exp_scalar(Z(3, 1)), DomainError);
  EXPECT_THROW(exp_scalar(Z(2, 2)), DomainError);
  EXPECT_NO_THROW(exp_scalar(Z(2, 4)));
  EXPECT_THROW(log_scalar(Z(3, 2)), DomainError);
}

TEST(ExpLog, AdditivityRandom) {
  std::mt19937_64 rng(11);
  for (u64 p : {2u, 3u, 5u}) {
    int vmin = p == 2 ? 2 : 1;
    for (int i = 0; i < 100; ++i) {
      auto x = Z(p, static_cast<i128>(rng() % 1000) * static_cast<i128>(ipow(p, vmin)), 16);
      auto y = Z(p, static_cast<i128>(rng() % 1000) * static_cast<i128>(ipow(p, vmin)), 16);
      auto lhs = exp_scalar(x + y);
      auto rhs = exp_scalar(x) * exp_scalar(y);
      EXPECT_EQ(lhs, rhs);
      EXPECT_GE((lhs - rhs).absolute_precision(), 14);
      if (!x.is_zero()) {
        EXPECT_EQ(log_scalar(exp_scalar(x)), x);
      }
    }
  }
}
