#include <gtest/gtest.h>

#include <random>

#include "padicdiff/diffeo.hpp"

using namespace padicdiff;

namespace {

constexpr u64 P = 3;
constexpr int N = 16;
constexpr int D = 16;
constexpr int L = 4;

PadicNumber Z(i128 n) { return PadicNumber::from_integer(P, n, N); }

Diffeo poly(std::initializer_list<i128> c, int levels = L) {
  std::vector<PadicNumber> v;
  for (i128 x : c) v.push_back(Z(x));
  return Diffeo::from_polynomial(Polynomial(P, std::move(v)), N, D, levels);
}

Diffeo id() { return Diffeo::identity(P, N, D, L); }

// f and g agree as functions: same tables and coefficients to working precision
void expect_same(const Diffeo& f, const Diffeo& g, int min_exponent = N - 4) {
  for (int l = 1; l <= L; ++l) EXPECT_EQ(f.table(l), g.table(l)) << "level " << l;
  auto r = distance_report(f, g, 0);
  EXPECT_GE(r.value.exponent(), min_exponent);
  EXPECT_GE(r.precision, min_exponent);
}

}  // namespace

TEST(Compose, Examples) {
  auto f = poly({5, 1 + 9 * 7, 9});
  expect_same(compose(f, id()), f);
  expect_same(compose(id(), f), f);
  expect_same(compose(poly({9, 1}), poly({9, 1})), poly({18, 1}));
  // (1 + p^2)x o (x + p^2) = (1 + p^2)x + p^2(1 + p^2)
  expect_same(compose(poly({0, 10}), poly({9, 1})), poly({90, 10}));
}

TEST(Compose, MismatchedPrimeOrLevel) {
  auto g = Diffeo::identity(5, N, D, L);
  EXPECT_THROW(compose(id(), g), DomainError);
  EXPECT_THROW(compose(id(), Diffeo::identity(P, N, D, 3)), DomainError);
}

TEST(Invert, Examples) {
  expect_same(invert(id()), id());
  expect_same(invert(poly({9, 1})), poly({-9, 1}));
  auto inv = invert(poly({0, 10}));
  auto expect = PadicNumber::from_integer(P, 1, N) / Z(10);
  EXPECT_EQ(inv.series().coeff(1) + PadicNumber::from_integer(P, 1, N), expect);
  EXPECT_TRUE(inv.series().coeff(0).is_zero());
  EXPECT_EQ(inv.poly_degree(), 1);
}

TEST(Invert, NonBijectiveTableIsIntegrityError) {
  // x^2 is not injective mod 3
  EXPECT_THROW(invert(poly({0, 0, 1})), IntegrityError);
}

TEST(Distance, Examples) {
  auto f = poly({9, 1});
  EXPECT_TRUE(distance(f, f, 0).is_infinite());
  EXPECT_TRUE(distance(f, f, 1).is_infinite());
  EXPECT_EQ(distance(f, id(), 0), Val(2));
  EXPECT_EQ(distance(f, id(), 1), Val(2));
  // x + 9x^2 differs from id by 9x^2; the C(1) quotient 9(2x + h) has norm p^-2
  EXPECT_EQ(distance(poly({0, 1, 9}), id(), 1), Val(2));
}

TEST(Distance, InverseDistanceMatchesRandom) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10; ++i) {
    auto f = random_w_element(rng, P, N, D, L);
    auto g = invert(f);
    EXPECT_EQ(distance(g, id(), 0), distance(f, id(), 0));
    EXPECT_EQ(table_distance(g, id(), 4), table_distance(f, id(), 4));
  }
}

TEST(InW, Examples) {
  EXPECT_TRUE(in_W(id(), 1));
  EXPECT_TRUE(in_W(poly({9, 1}), 1));
  EXPECT_TRUE(poly({9, 1}).w_member());
  EXPECT_FALSE(in_W(poly({0, 1 + 3}), 0));
  EXPECT_FALSE(poly({0, 4}).w_member());
}

TEST(IsIsometry, Examples) {
  EXPECT_TRUE(is_isometry(id(), 4));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(is_isometry(random_w_element(rng, P, N, D, L), 4));
  EXPECT_FALSE(is_isometry(poly({0, 0, 1}, 2), 2));
}

TEST(WeightedNorm, Examples) {
  EXPECT_TRUE(weighted_norm_a(id(), 0).value.is_infinite());
  auto f = Diffeo::from_series(MahlerSeries::basis(Z(81), 1, N, D), L, 1);
  EXPECT_EQ(weighted_norm_a(f, 0).value, Val(2));
  MahlerSeries u = MahlerSeries::zero(P, N, 10);
  for (int m = 1; m <= 10; ++m) u.coeffs[m] = p_power(P, m + 3, N);
  auto g = Diffeo::from_series(u, L);
  auto r = weighted_norm_a(g, 0);
  EXPECT_EQ(r.value, Val(2));
  EXPECT_EQ(r.witnesses, 0);
  // at t = 1 the basis norms J(1, m) grow and witnesses appear
  EXPECT_GT(weighted_norm_a(g, 1).witnesses, 0);
}

TEST(GroupLaws, AssociativityAndInversesRandom) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 8; ++i) {
    auto f = random_w_element(rng, P, N, D, L);
    auto g = random_w_element(rng, P, N, D, L);
    auto h = random_w_element(rng, P, N, D, L);
    auto a = compose(compose(f, g), h);
    auto b = compose(f, compose(g, h));
    for (int l = 1; l <= L; ++l) EXPECT_EQ(a.table(l), b.table(l));
    auto fi = invert(f);
    expect_same(compose(f, fi), id());
    expect_same(compose(fi, f), id());
    EXPECT_TRUE(compose(f, g).w_member());
    EXPECT_TRUE(fi.w_member());
  }
}

TEST(GroupLaws, RightInvarianceAtC0) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 8; ++i) {
    auto f = random_w_element(rng, P, N, D, L);
    auto g = random_w_element(rng, P, N, D, L);
    auto h = random_w_element(rng, P, N, D, L);
    EXPECT_EQ(distance(compose(f, h), compose(g, h), 0), distance(f, g, 0));
    for (int l = 1; l <= L; ++l)
      EXPECT_EQ(table_distance(compose(f, h), compose(g, h), l), table_distance(f, g, l));
  }
}

TEST(Tables, TowerCompatibleAndBijective) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 10; ++i) {
    auto f = compose(random_w_element(rng, P, N, D, L), invert(random_w_element(rng, P, N, D, L)));
    for (int l = 1; l <= L; ++l) {
      const auto& t = f.table(l);
      EXPECT_TRUE(detail::is_permutation(t));
      if (l > 1) {
        u64 mod = ipow(P, l - 1);
        for (u64 x = 0; x < t.size(); ++x) EXPECT_EQ(t[x] % mod, f.table(l - 1)[x % mod]);
      }
    }
  }
}

TEST(Piecewise, ClosedUnderComposeAndInvert) {
  std::vector<PadicNumber> c{Z(1), Z(-1), Z(0)};
  auto s = Diffeo::piecewise(P, 1, c, N, D, L);
  EXPECT_EQ(s.kind(), ReprKind::ValueTable);
  auto ss = compose(s, s);
  ASSERT_TRUE(ss.piecewise_data().has_value());
  EXPECT_TRUE(distance(ss, id(), 0).is_infinite());
  auto si = invert(s);
  for (int l = 1; l <= L; ++l) EXPECT_EQ(si.table(l), s.table(l));
  EXPECT_FALSE(s.w_member());
  EXPECT_TRUE(is_isometry(s, 3));
}
