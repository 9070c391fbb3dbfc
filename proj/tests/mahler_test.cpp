#include <gtest/gtest.h>

#include <random>

#include "padicdiff/mahler.hpp"

using namespace padicdiff;

namespace {

constexpr u64 P = 3;
constexpr int N = 16;

PadicNumber Z(i128 n, u64 p = P) { return PadicNumber::from_integer(p, n, N); }

MahlerSeries series(std::initializer_list<i128> a, u64 p = P) {
  MahlerSeries s = MahlerSeries::zero(p, N, static_cast<int>(a.size()) - 1);
  int m = 0;
  for (i128 c : a) s.coeffs[m++] = PadicNumber::from_integer(p, c, N);
  return s;
}

void expect_coeffs(const MahlerSeries& s, std::initializer_list<i128> a) {
  int m = 0;
  for (i128 c : a) {
    EXPECT_EQ(s.coeff(m), Z(c)) << "coefficient " << m;
    ++m;
  }
  for (; m <= s.degree_bound(); ++m) EXPECT_TRUE(s.coeff(m).is_zero()) << "coefficient " << m;
}

// integer polynomial with coefficients c_0..c_d evaluated exactly
i128 poly_value(const std::vector<i128>& c, i128 x) {
  i128 acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

TEST(MahlerCoeffs, Examples) {
  expect_coeffs(mahler_coeffs(P, [](u64 k) { return Z(k); }, 6), {0, 1});
  expect_coeffs(mahler_coeffs(P, [](u64 k) { return Z(k * k); }, 6), {0, 1, 2});
  expect_coeffs(mahler_coeffs(P, [](u64) { return Z(7); }, 6), {7});
}

TEST(MahlerCoeffs, InsufficientTable) {
  std::vector<PadicNumber> v{Z(0), Z(1)};
  EXPECT_THROW(mahler_coeffs(std::span<const PadicNumber>(v), 4), DomainError);
}

TEST(MahlerEvaluate, Examples) {
  EXPECT_EQ(evaluate(series({0, 1}), Z(5)), Z(5));
  EXPECT_EQ(evaluate(series({0, 1, 2}), Z(4)), Z(16));
  EXPECT_EQ(evaluate(series({11}), Z(-40)), Z(11));
  EXPECT_THROW(evaluate(series({0, 1}), PadicNumber::from_rational(P, 1, 3, N)), DomainError);
}

TEST(MahlerEvaluate, RoundTripPolynomials) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<i128> c(8);
    for (auto& x : c) x = static_cast<i128>(rng() % 201) - 100;
    auto s = mahler_coeffs(P, [&](u64 k) { return Z(poly_value(c, k)); }, 7);
    for (u64 x = 0; x < 27; ++x) {
      EXPECT_EQ(evaluate(s, Z(x)), Z(poly_value(c, x)));
      EXPECT_EQ(evaluate_at_integer(s, x), Z(poly_value(c, x)));
    }
    // also at a non-integer p-adic point
    auto x = PadicNumber::from_rational(P, 5, 7, N);
    PadicNumber expect = PadicNumber::zero(P);
    for (auto it = c.rbegin(); it != c.rend(); ++it) expect = expect * x + Z(*it);
    EXPECT_EQ(evaluate(s, x), expect);
  }
}

TEST(MahlerLinearity, CoefficientsAreLinear) {
  auto f = [](u64 k) { return Z(static_cast<i128>(k) * k * k - 4); };
  auto g = [](u64 k) { return Z(static_cast<i128>(7) * k + 2); };
  auto sf = mahler_coeffs(P, f, 6);
  auto sg = mahler_coeffs(P, g, 6);
  auto sh = mahler_coeffs(P, [&](u64 k) { return Z(5) * f(k) - Z(2) * g(k); }, 6);
  auto lin = Z(5) * sf - Z(2) * sg;
  for (int m = 0; m <= 6; ++m) EXPECT_EQ(sh.coeff(m), lin.coeff(m));
}

TEST(DifferenceQuotient, Examples) {
  auto id = series({0, 1});
  auto sq = series({0, 1, 2});
  auto x = Z(4), h = Z(7), zeta = Z(3), h2 = Z(2), zeta2 = Z(5);
  std::vector<PadicNumber> hs{h}, zs{zeta};
  EXPECT_EQ(difference_quotient(id, 1, x, hs, zs), h);
  // (x + zeta h)^2 - x^2 over zeta = 2xh + zeta h^2
  EXPECT_EQ(difference_quotient(sq, 1, x, hs, zs), Z(2) * x * h + zeta * h * h);
  std::vector<PadicNumber> hs2{h, h2}, zs2{zeta, zeta2};
  EXPECT_EQ(difference_quotient(sq, 2, x, hs2, zs2), Z(2) * h * h2);
  std::vector<PadicNumber> zero_zeta{PadicNumber::zero(P)};
  EXPECT_THROW(difference_quotient(id, 1, x, hs, zero_zeta), DomainError);
}

TEST(DifferenceQuotient, VanishesAboveDegree) {
  auto cubic = mahler_coeffs(P, [](u64 k) { return Z(static_cast<i128>(k) * k * k + 2 * k); }, 5);
  std::vector<PadicNumber> hs{Z(1), Z(4), Z(10), Z(2)}, zs{Z(3), Z(2), Z(1), Z(9)};
  EXPECT_TRUE(difference_quotient(cubic, 4, Z(13), hs, zs).is_zero());
}

TEST(NormCt, Examples) {
  auto id = series({0, 1});
  EXPECT_EQ(norm_Ct(id, 1, 3).value, Val(0));
  EXPECT_TRUE(norm_Ct(series({0}), 2, 3).value.is_infinite());
  auto f = series({0, 9});
  EXPECT_EQ(norm_Ct(f, 0, 3).value, Val(2));
}

TEST(NormCt, MonotoneInLevel) {
  auto s = series({1, 3, -2, 5, 9, 1});
  for (int t = 0; t <= 2; ++t) {
    Val prev = norm_Ct(s, t, 1).value;
    for (int L = 2; L <= 3; ++L) {
      Val cur = norm_Ct(s, t, L).value;
      EXPECT_GE(cur, prev);
      prev = cur;
    }
  }
}

TEST(NormCt, SupNormEqualsMaxCoefficientRandom) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    MahlerSeries s = MahlerSeries::zero(P, N, 20);
    for (auto& c : s.coeffs) {
      int v = static_cast<int>(rng() % 6);
      c = (rng() % 4 == 0) ? PadicNumber::zero(P) : p_power(P, v, N) * Z(1 + 3 * (rng() % 50));
    }
    auto r3 = norm_Ct(s, 0, 3);
    auto r4 = norm_Ct(s, 0, 4);
    EXPECT_EQ(r3.value, s.sup_norm());
    EXPECT_EQ(r4.value, r3.value);
  }
}

// Values frozen from an exhaustive rational-arithmetic grid search (p = 3).
TEST(BasisNormJ, GridOracleValues) {
  for (int m = 0; m <= 12; ++m) EXPECT_EQ(basis_norm_J(P, 0, m, 3).value, Val(0));
  EXPECT_EQ(basis_norm_J(P, 1, 2, 4).value, Val(0));
  EXPECT_TRUE(basis_norm_J(P, 1, 2, 4).stabilized);
  EXPECT_EQ(basis_norm_J(P, 1, 3, 4).value, Val(-1));
  EXPECT_EQ(basis_norm_J(P, 1, 8, 4).value, Val(-1));
  EXPECT_EQ(basis_norm_J(P, 1, 9, 3).value, Val(-2));
  EXPECT_EQ(basis_norm_J(P, 1, 9, 4).value, Val(-2));
  EXPECT_EQ(basis_norm_J(P, 2, 2, 3).value, Val(0));
  EXPECT_EQ(basis_norm_J(P, 2, 3, 3).value, Val(-1));
  EXPECT_EQ(basis_norm_J(P, 2, 5, 3).value, Val(-1));
  EXPECT_EQ(basis_norm_J(P, 2, 6, 3).value, Val(-2));
}

TEST(IsAnalytic, Examples) {
  EXPECT_TRUE(is_analytic(series({4, 0, 1, 7})).analytic);
  for (int D : {3, 5, 10, 20}) {
    MahlerSeries ones = MahlerSeries::zero(P, N, D);
    for (auto& c : ones.coeffs) c = Z(1);
    ones.tail_val = Val(0);
    EXPECT_FALSE(is_analytic(ones).analytic) << "D=" << D;
  }
  MahlerSeries decay = MahlerSeries::zero(P, N, 20);
  for (int m = 0; m <= 20; ++m) decay.coeffs[m] = p_power(P, m, N);
  decay.tail_val = Val(21);
  auto r = is_analytic(decay);
  EXPECT_TRUE(r.analytic);
  EXPECT_GT(r.margin.exponent(), 0);
}

TEST(AnalyticNormPair, Examples) {
  auto [a, b] = analytic_norm_pair(series({0, 1}));
  EXPECT_EQ(a, Val(0));
  EXPECT_EQ(b, Val(0));
  auto q = to_monomial(series({0, 0, 1}));
  ASSERT_EQ(q.degree(), 2);
  EXPECT_TRUE(q.coeff(0).is_zero());
  EXPECT_EQ(q.coeff(1), PadicNumber::from_rational(P, -1, 2, N));
  EXPECT_EQ(q.coeff(2), PadicNumber::from_rational(P, 1, 2, N));
  auto [c, d] = analytic_norm_pair(series({0, 9}));
  EXPECT_EQ(c, Val(2));
  EXPECT_EQ(d, Val(2));
}

TEST(AnalyticNormPair, NormsAgreeOnRandomPolynomials) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    MahlerSeries s = MahlerSeries::zero(P, 24, 12);
    for (int m = 0; m <= 12; ++m)
      s.coeffs[m] = PadicNumber::from_integer(P, static_cast<i128>(rng() % 50) - 25, 24) *
                    p_power(P, factorial_valuation(m, P) + static_cast<int>(rng() % 3) - 1, 24);
    auto [lhs, rhs] = analytic_norm_pair(s);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Antiderivative, Examples) {
  EXPECT_TRUE(antiderivative(series({0})).sup_norm().is_infinite());
  expect_coeffs(antiderivative(series({1})), {0, 1});
  // 2x = 2 binom(x,1) integrates to x^2 = binom(x,1) + 2 binom(x,2)
  expect_coeffs(antiderivative(series({0, 2})), {0, 1, 2});
}

TEST(Antiderivative, DerivativeInvertsIt) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    MahlerSeries s = MahlerSeries::zero(P, 24, 10);
    for (auto& c : s.coeffs) c = PadicNumber::from_integer(P, static_cast<i128>(rng() % 100) - 50, 24);
    auto back = derivative(antiderivative(s));
    for (int m = 0; m <= 10; ++m) EXPECT_EQ(back.coeff(m), s.coeff(m));
    EXPECT_TRUE(evaluate(antiderivative(s), Z(0)).is_zero());
  }
}

TEST(Antiderivative, PrecisionExhausted) {
  MahlerSeries s = MahlerSeries::zero(P, 4, 9);
  s.coeffs[8] = PadicNumber::zero(P, 0);
  EXPECT_THROW(antiderivative(s), PrecisionError);
}
