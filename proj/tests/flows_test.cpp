#include <gtest/gtest.h>

#include <random>

#include "padicdiff/flows.hpp"

using namespace padicdiff;

namespace {

constexpr u64 P = 3;
constexpr int N = 16;
constexpr int D = 24;
constexpr int GUARD = 4;

PadicNumber Z(i128 n) { return PadicNumber::from_integer(P, n, N); }
PadicNumber one() { return Z(1); }

VectorField field(std::initializer_list<i128> c, int degree = D) {
  std::vector<PadicNumber> v;
  for (i128 x : c) v.push_back(Z(x));
  return VectorField::from_polynomial(Polynomial(P, std::move(v)), degree, N);
}

VectorField mono(i128 c, int m, int degree = D) { return VectorField::monomial(Z(c), m, degree, N); }

VectorField random_field(std::mt19937_64& rng, int max_degree = 3) {
  std::vector<PadicNumber> c;
  for (int k = 0; k <= max_degree; ++k) c.push_back(Z((static_cast<i128>(rng() % 21) - 10) * 9));
  if (c[0].is_zero() && c[1].is_zero()) c[0] = Z(9);
  return VectorField::from_polynomial(Polynomial(P, std::move(c)), D, N);
}

void expect_field_eq(const VectorField& a, const VectorField& b) {
  int top = std::max(a.mono.degree(), b.mono.degree());
  for (int k = 0; k <= top; ++k) EXPECT_EQ(a.mono.coeff(k), b.mono.coeff(k)) << "x^" << k;
}

void expect_close(const DistanceReport& r, int min_exponent = N - GUARD) {
  EXPECT_GE(r.value.exponent(), min_exponent);
  EXPECT_GE(r.precision, min_exponent);
}

Diffeo poly(std::initializer_list<i128> c) {
  std::vector<PadicNumber> v;
  for (i128 x : c) v.push_back(Z(x));
  return Diffeo::from_polynomial(Polynomial(P, std::move(v)), N, D);
}

}  // namespace

TEST(Bracket, Examples) {
  auto u = field({3, 5, 9});
  EXPECT_TRUE(bracket(u, u).norm().is_infinite());
  // [xi x^m, zeta x^n] = xi zeta (n - m) x^(m+n-1)
  expect_field_eq(bracket(mono(2, 2), mono(5, 4)), mono(2 * 5 * 2, 5));
  expect_field_eq(bracket(mono(9, 0), mono(9, 1)), mono(81, 0));
}

TEST(Bracket, AntisymmetryAndJacobiRandom) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    auto a = random_field(rng), b = random_field(rng), c = random_field(rng);
    auto ab = bracket(a, b), ba = bracket(b, a);
    EXPECT_TRUE(field_distance(ab, VectorField::from_polynomial(-ba.mono, D, N)).value.is_infinite());
    auto j = bracket(a, bracket(b, c)).mono + bracket(b, bracket(c, a)).mono + bracket(c, bracket(a, b)).mono;
    EXPECT_TRUE(j.gauss_norm().is_infinite());
  }
}

TEST(AdPower, Examples) {
  expect_field_eq(ad_power(mono(2, 1), mono(7, 3), 1), bracket(mono(2, 1), mono(7, 3)));
  // s = 2, m = 2, n = 3: xi^2 zeta (1)(2) x^5
  expect_field_eq(ad_power(mono(2, 2), mono(7, 3), 2), mono(4 * 7 * 2, 5));
  for (int s = 1; s <= 4; ++s) EXPECT_TRUE(ad_power(mono(2, 3), mono(7, 3), s).norm().is_infinite());
  EXPECT_THROW(ad_power(field({1, 1}), mono(1, 2), 1), DomainError);
}

TEST(AdPower, MatchesIteratedBrackets) {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      auto u = mono(2, m, 32), v = mono(5, n, 32);
      VectorField it = v;
      for (int s = 1; s <= 4; ++s) {
        it = bracket(u, it, 32);
        expect_field_eq(ad_power(u, v, s, 32), it);
      }
    }
}

TEST(ExpField, Examples) {
  auto id = exp_field(VectorField::zero(P, D, N), one());
  EXPECT_TRUE(distance(id.g_q, Diffeo::identity(P, N, D), 0).is_infinite());
  auto tr = exp_field(mono(9, 0), one());
  EXPECT_EQ(tr.terms_used, 2);
  EXPECT_TRUE(tr.g_q.series().tail_val.is_infinite());
  EXPECT_TRUE(distance(tr.g_q, poly({9, 1}), 0).is_infinite());
  auto lin = exp_field(mono(9, 1), one());
  EXPECT_EQ(lin.monomial.coeff(1), exp_scalar(Z(9)));
  EXPECT_TRUE(lin.monomial.coeff(0).is_zero());
  EXPECT_GE(lin.precision, N);
  EXPECT_TRUE(lin.g_q.w_member());
}

TEST(ExpField, OutsideDomain) {
  EXPECT_THROW(exp_field(mono(3, 1), one()), ConvergenceError);
  EXPECT_THROW(exp_field(mono(9, 1), PadicNumber::from_rational(P, 1, 3, N)), ConvergenceError);
}

TEST(LogDiffeo, Examples) {
  auto z = log_diffeo(Diffeo::identity(P, N, D));
  EXPECT_TRUE(z.A.norm().is_infinite());
  auto t = log_diffeo(poly({9, 1}));
  expect_close(field_distance(t.A, mono(9, 0)));
  auto l = log_diffeo(poly({0, 10}));
  auto expect = VectorField::monomial(log_scalar(Z(10)), 1, D, N);
  expect_close(field_distance(l.A, expect));
  expect_close(distance_report(exp_field(l.A, one()).g_q, poly({0, 10}), 0));
  EXPECT_THROW(log_diffeo(poly({0, 4})), DomainError);
}

TEST(LogDiffeo, RoundTripAndIterationContractRandom) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    auto A = random_field(rng);
    auto g = exp_field(A, one()).g_q;
    auto r = log_diffeo(g);
    expect_close(field_distance(r.A, A));
    ASSERT_FALSE(r.steps.empty());
    for (const auto& s : r.steps) {
      EXPECT_EQ(s.norm, r.p_norm) << "step " << s.j;
      if (s.j > 0 && !s.change.is_infinite()) {
        EXPECT_GE(s.change.exponent(), r.p_norm.exponent() + s.j);
      }
    }
  }
}

TEST(LogDiffeo, ExpOfLogRandom) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 10; ++i) {
    auto f = random_w_element(rng, P, N, D);
    auto A = log_diffeo(f).A;
    expect_close(distance_report(exp_field(A, one()).g_q, f, 0));
  }
}

TEST(MonomialFlow, Examples) {
  auto q = Z(3 * 7);
  auto m0 = monomial_flow(0, q, 10);
  EXPECT_EQ(m0.g.degree(), 1);
  EXPECT_EQ(m0.g.coeff(0), q);
  EXPECT_EQ(m0.g.coeff(1), one());
  auto m1 = monomial_flow(1, q, 40);
  EXPECT_GE(m1.precision, q.absolute_precision());
  EXPECT_EQ(m1.g.coeff(1), exp_scalar(q));
  auto m2 = monomial_flow(2, q, 25);
  for (const auto& c : m2.normalized) EXPECT_EQ(c, one());
  // x / (1 - q x) = sum q^k x^(k+1)
  PadicNumber qk = one();
  for (int k = 0; k < 25; ++k) {
    EXPECT_EQ(m2.g.coeff(k + 1), qk);
    qk = qk * q;
  }
  EXPECT_THROW(monomial_flow(1, Z(2), 5), ConvergenceError);
}

TEST(MonomialFlow, MatchesExpField) {
  auto q = Z(9);
  for (int m = 0; m <= 3; ++m) {
    auto closed = monomial_flow(m, q, 40);
    auto e = exp_field(mono(9, m, 40), one(), 40);
    for (int k = 0; k <= 40; ++k) {
      auto a = closed.g.coeff(k).with_absolute_cap(e.precision);
      auto b = e.monomial.coeff(k).with_absolute_cap(e.precision);
      EXPECT_EQ(a, b) << "m=" << m << " x^" << k;
    }
  }
}

TEST(OneParam, Examples) {
  auto A = field({0, 0, 9});
  EXPECT_TRUE(one_param_check(A, Z(5), PadicNumber::zero(P)).value.is_infinite());
  auto tr = one_param_check(mono(9, 0), Z(4), Z(-7));
  EXPECT_TRUE(tr.value.is_infinite());
  EXPECT_GE(tr.precision, N);
  expect_close(one_param_check(A, one(), one()));
}

TEST(OneParam, RandomFields) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5; ++i) expect_close(one_param_check(random_field(rng), Z(rng() % 50), Z(rng() % 50)));
}

TEST(Bch, Examples) {
  auto u = mono(9, 2);
  EXPECT_TRUE(bch_discrepancy(u, VectorField::zero(P, D, N), 4).value.is_infinite());
  expect_close(bch_discrepancy(u, mono(18, 2), 4));
  auto r = bch_discrepancy(u, mono(9, 3), 4);
  EXPECT_FALSE(r.value.is_infinite());
  EXPECT_LT(r.value.exponent(), r.precision);
  EXPECT_THROW(bch_discrepancy(u, u, 5), DomainError);
}

TEST(Bch, HigherOrderShrinksDiscrepancy) {
  auto u = mono(9, 2), v = mono(9, 3);
  int prev = -1;
  for (int r = 1; r <= 4; ++r) {
    int e = bch_discrepancy(u, v, r).value.exponent();
    EXPECT_GE(e, prev);
    prev = e;
  }
}

TEST(SolveCommutator, Examples) {
  EXPECT_TRUE(solve_commutator(VectorField::zero(P, D, N)).norm().is_infinite());
  expect_field_eq(solve_commutator(mono(5, 0)), mono(-5, 1));
  auto A = solve_commutator(mono(9, 1));
  auto half = PadicNumber::from_rational(P, -9, 2, N);
  EXPECT_EQ(A.mono.coeff(2), half);
  auto d = mono(1, 0);
  expect_close(field_distance(bracket(A, d), mono(9, 1)));
}

TEST(FlowOde, RandomFields) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 5; ++i) expect_close(flow_ode_check(random_field(rng), Z(rng() % 30)));
}
