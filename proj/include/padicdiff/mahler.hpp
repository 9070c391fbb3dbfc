#pragma once

// Functions Z_p -> Q_p in the Mahler basis binom(x, m).
//
// A MahlerSeries stores a_0..a_D together with tail_val, a lower bound on the
// valuation of every a_m with m > D (infinite for exactly polynomial data).
// Because the basis is orthonormal for the sup-norm, the tail bound is also a
// bound on the sup-norm of the discarded part.

#include <algorithm>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "padicdiff/padic.hpp"
#include "padicdiff/polynomial.hpp"

namespace padicdiff {

inline constexpr int kDefaultDegree = 32;
inline constexpr int kDefaultLevel = 4;
inline constexpr int kMaxSmoothness = 3;

struct MahlerSeries {
  u64 p = 0;
  int precision = 0;  ///< working relative precision N
  std::vector<PadicNumber> coeffs;
  Val tail_val = Val::infinity();

  int degree_bound() const { return static_cast<int>(coeffs.size()) - 1; }

  PadicNumber coeff(int m) const {
    if (m < 0 || m > degree_bound()) return PadicNumber::zero(p);
    return coeffs[m];
  }

  static MahlerSeries zero(u64 p, int precision, int degree) {
    MahlerSeries s;
    s.p = p;
    s.precision = precision;
    s.coeffs.assign(degree + 1, PadicNumber::zero(p));
    return s;
  }

  static MahlerSeries identity(u64 p, int precision, int degree) {
    MahlerSeries s = zero(p, precision, std::max(degree, 1));
    s.coeffs[1] = PadicNumber::from_integer(p, 1, precision);
    return s;
  }

  /// Single basis element c * binom(x, m).
  static MahlerSeries basis(const PadicNumber& c, int m, int precision, int degree) {
    MahlerSeries s = zero(c.prime(), precision, std::max(degree, m));
    s.coeffs[m] = c;
    return s;
  }

  /// max(max_m |a_m|, tail bound): the sup-norm over Z_p.
  Val sup_norm() const {
    Val n = tail_val;
    for (const auto& c : coeffs) n = max_norm(n, c.norm());
    return n;
  }

  /// Digits to which the function is known: min over coefficient precisions and the tail.
  int absolute_precision() const {
    int a = tail_val.exponent();
    for (const auto& c : coeffs) a = std::min(a, c.absolute_precision());
    return a;
  }

  /// True when every coefficient is a p-adic integer, i.e. the function maps Z_p into Z_p.
  bool maps_into_integers() const {
    if (tail_val.exponent() < 0) return false;
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const PadicNumber& c) { return c.is_zero() || c.valuation() >= 0; });
  }

  MahlerSeries resized(int degree) const {
    MahlerSeries s = *this;
    if (degree < degree_bound()) {
      for (int m = degree + 1; m <= degree_bound(); ++m) {
        const auto& c = coeffs[m];
        s.tail_val = max_norm(s.tail_val, c.is_zero() ? Val(c.absolute_precision()) : c.norm());
      }
    }
    s.coeffs.resize(degree + 1, PadicNumber::zero(p));
    return s;
  }

  MahlerSeries with_absolute_cap(int cap) const {
    MahlerSeries s = *this;
    for (auto& c : s.coeffs) c = c.with_absolute_cap(cap);
    s.tail_val = max_norm(s.tail_val, Val(cap));
    return s;
  }

  friend MahlerSeries operator+(const MahlerSeries& a, const MahlerSeries& b) {
    if (a.p != b.p) throw DomainError("MahlerSeries: mismatched primes");
    MahlerSeries s = zero(a.p, std::min(a.precision, b.precision), std::max(a.degree_bound(), b.degree_bound()));
    for (int m = 0; m <= s.degree_bound(); ++m) s.coeffs[m] = a.coeff(m) + b.coeff(m);
    s.tail_val = max_norm(a.tail_val, b.tail_val);
    return s;
  }

  MahlerSeries operator-() const {
    MahlerSeries s = *this;
    for (auto& c : s.coeffs) c = -c;
    return s;
  }

  friend MahlerSeries operator-(const MahlerSeries& a, const MahlerSeries& b) { return a + (-b); }

  friend MahlerSeries operator*(const PadicNumber& c, const MahlerSeries& a) {
    MahlerSeries s = a;
    for (auto& x : s.coeffs) x = c * x;
    s.tail_val = c.norm() * a.tail_val;
    return s;
  }
};

namespace detail {

inline PadicNumber exact_int(u64 p, i128 n) { return PadicNumber::from_integer(p, n, max_precision(p)); }

/// Forward differences at 0 of values[0..D].
inline std::vector<PadicNumber> forward_differences(std::vector<PadicNumber> v, int degree) {
  std::vector<PadicNumber> out;
  out.reserve(degree + 1);
  for (int m = 0; m <= degree; ++m) {
    out.push_back(v[0]);
    for (std::size_t i = 0; i + 1 < v.size() - m; ++i) v[i] = v[i + 1] - v[i];
  }
  return out;
}

}  // namespace detail

/// Mahler coefficients a_m = (Delta^m f)(0) from a value table on 0, 1, 2, ...
inline MahlerSeries mahler_coeffs(std::span<const PadicNumber> values, int degree) {
  if (degree < 0) throw DomainError("mahler_coeffs: negative degree bound");
  if (values.size() < static_cast<std::size_t>(degree) + 1)
    throw DomainError("mahler_coeffs: table has " + std::to_string(values.size()) +
                      " values, need " + std::to_string(degree + 1));
  u64 p = values[0].prime();
  std::vector<PadicNumber> v(values.begin(), values.begin() + degree + 1);
  MahlerSeries s;
  s.p = p;
  s.precision = 0;
  for (const auto& x : v) s.precision = std::max(s.precision, x.precision());
  if (s.precision == 0) s.precision = max_precision(p);
  s.coeffs = detail::forward_differences(std::move(v), degree);
  // Values beyond D are not consulted: the tail is unknown unless the caller
  // knows f is polynomial of degree <= D.
  s.tail_val = Val::infinity();
  return s;
}

/// Mahler coefficients of a callable evaluated at 0..D.
inline MahlerSeries mahler_coeffs(u64 p, const std::function<PadicNumber(u64)>& f, int degree) {
  std::vector<PadicNumber> v;
  for (int k = 0; k <= degree; ++k) v.push_back(f(static_cast<u64>(k)));
  if (v.empty()) v.push_back(PadicNumber::zero(p));
  return mahler_coeffs(std::span<const PadicNumber>(v), degree);
}

/// Sum_m a_m binom(k, m) for an integer k >= 0, using exact binomials.
inline PadicNumber evaluate_at_integer(const MahlerSeries& s, u64 k) {
  PadicNumber acc = PadicNumber::zero(s.p);
  PadicNumber binom = detail::exact_int(s.p, 1);
  for (int m = 0; m <= s.degree_bound(); ++m) {
    if (m > 0) {
      if (static_cast<u64>(m) > k) break;
      binom = binom * detail::exact_int(s.p, static_cast<i128>(k) - m + 1) / detail::exact_int(s.p, m);
    }
    if (!s.coeffs[m].is_exact_zero()) acc += s.coeffs[m] * binom;
  }
  if (!s.tail_val.is_infinite()) acc = acc.with_absolute_cap(s.tail_val.exponent());
  return acc;
}

/// Sum_m a_m binom(x, m) for |x| <= 1. binom(x, m) is built from the falling
/// factorial, dividing by m at each step; precision losses are tracked.
inline PadicNumber evaluate(const MahlerSeries& s, const PadicNumber& x) {
  if (!x.is_zero() && x.valuation() < 0) throw DomainError("evaluate: |x| > 1");
  if (x.prime() != s.p) throw DomainError("evaluate: mismatched primes");
  PadicNumber acc = PadicNumber::zero(s.p);
  PadicNumber binom = detail::exact_int(s.p, 1);
  for (int m = 0; m <= s.degree_bound(); ++m) {
    if (m > 0) binom = binom * (x - detail::exact_int(s.p, m - 1)) / detail::exact_int(s.p, m);
    if (!s.coeffs[m].is_exact_zero()) acc += s.coeffs[m] * binom;
  }
  if (!s.tail_val.is_infinite()) acc = acc.with_absolute_cap(s.tail_val.exponent());
  return acc;
}

/// Exponent l with |f(x) - f(y)| <= p^-l |x - y| for the stored part, using
/// |binom(x+d, m) - binom(x, m)| <= max_j |binom(d, j)| <= |d| p^floor(log_p m).
inline int lipschitz_exponent(const MahlerSeries& s) {
  int best = kInfinity;
  for (int m = 1; m <= s.degree_bound(); ++m) {
    const auto& c = s.coeffs[m];
    int digits = 0;
    for (u64 q = static_cast<u64>(m); q >= s.p; q /= s.p) ++digits;
    int v = c.is_zero() ? (c.absolute_precision() == kInfinity ? kInfinity : c.absolute_precision()) : c.valuation();
    if (v != kInfinity) best = std::min(best, v - digits);
  }
  return best;
}

/// Evaluates at a p-adic integer known only to a few digits by evaluating at
/// its integer representative y0 and bounding |f(y) - f(y0)| with the
/// Lipschitz exponent and the tail. Avoids the pessimistic loss of
/// v_p(m!) digits that the falling-factorial recurrence would report.
inline PadicNumber evaluate_stable(const MahlerSeries& s, const PadicNumber& y) {
  if (!y.is_zero() && y.valuation() < 0) throw DomainError("evaluate: |x| > 1");
  int a = y.absolute_precision();
  if (a == kInfinity || a > max_precision(s.p)) return evaluate(s, y);
  if (a <= 0) throw PrecisionError("evaluate: argument carries no digits");
  u64 y0 = y.residue(a);
  PadicNumber v = evaluate_at_integer(s, y0);
  int lip = lipschitz_exponent(s);
  int cap = lip == kInfinity ? kInfinity : a + lip;
  if (cap != kInfinity) v = v.with_absolute_cap(cap);
  return v;
}

/// Monomial coefficients of the stored part: sum_m a_m binom(x, m).
inline Polynomial to_monomial(const MahlerSeries& s) {
  Polynomial acc(s.p);
  Polynomial binom(s.p, {detail::exact_int(s.p, 1)});
  for (int m = 0; m <= s.degree_bound(); ++m) {
    if (m > 0) {
      Polynomial lin(s.p, {detail::exact_int(s.p, -(m - 1)), detail::exact_int(s.p, 1)});
      binom = (PadicNumber(detail::exact_int(s.p, 1)) / detail::exact_int(s.p, m)) * (binom * lin);
    }
    if (!s.coeffs[m].is_exact_zero()) acc = acc + s.coeffs[m] * binom;
  }
  return acc;
}

/// Mahler coefficients of a polynomial: a_j = j! * sum_k b_k S(k, j), with
/// S the Stirling numbers of the second kind. Degree bound = max(degree, deg q);
/// coefficients above `degree` feed tail_val exactly.
inline MahlerSeries from_monomial(const Polynomial& q, int degree, int precision) {
  u64 p = q.prime();
  int full = std::max(q.degree(), 0);
  // surj[k][j] = j! S(k, j) = number of surjections k -> j.
  std::vector<std::vector<PadicNumber>> surj(full + 1, std::vector<PadicNumber>(full + 1, PadicNumber::zero(p)));
  surj[0][0] = detail::exact_int(p, 1);
  for (int k = 1; k <= full; ++k)
    for (int j = 1; j <= k; ++j)
      surj[k][j] = detail::exact_int(p, j) * (surj[k - 1][j] + surj[k - 1][j - 1]);
  MahlerSeries s = MahlerSeries::zero(p, precision, std::max(degree, 0));
  for (int j = 0; j <= full; ++j) {
    PadicNumber a = PadicNumber::zero(p);
    for (int k = j; k <= q.degree(); ++k)
      if (!q.coeffs()[k].is_exact_zero()) a += q.coeffs()[k] * surj[k][j];
    if (j <= degree) {
      s.coeffs[j] = a;
    } else {
      s.tail_val = max_norm(s.tail_val, a.is_zero() ? Val(a.absolute_precision()) : a.norm());
    }
  }
  return s;
}

/// Recursive difference quotient Phi^n f(x; h; zeta) with j_1(zeta) = zeta:
/// sum over subsets S of (-1)^(n-|S|) f(x + sum_{i in S} zeta_i h_i) / prod zeta_i.
inline PadicNumber difference_quotient(const MahlerSeries& f, int order, const PadicNumber& x,
                                       std::span<const PadicNumber> h, std::span<const PadicNumber> zeta) {
  if (order < 0) throw DomainError("difference_quotient: negative order");
  if (h.size() != static_cast<std::size_t>(order) || zeta.size() != static_cast<std::size_t>(order))
    throw DomainError("difference_quotient: need one increment and one scalar per order");
  auto in_zp = [](const PadicNumber& a) { return a.is_zero() || a.valuation() >= 0; };
  if (!in_zp(x)) throw DomainError("difference_quotient: x outside Z_p");
  PadicNumber denom = detail::exact_int(f.p, 1);
  std::vector<PadicNumber> steps;
  for (int i = 0; i < order; ++i) {
    if (!in_zp(h[i]) || !in_zp(zeta[i])) throw DomainError("difference_quotient: argument outside Z_p");
    PadicNumber step = zeta[i] * h[i];
    if (step.is_zero()) throw DomainError("difference_quotient: zero increment zeta*h");
    steps.push_back(step);
    denom *= zeta[i];
  }
  PadicNumber acc = PadicNumber::zero(f.p);
  for (unsigned mask = 0; mask < (1u << order); ++mask) {
    PadicNumber pt = x;
    int bits = 0;
    for (int i = 0; i < order; ++i)
      if (mask & (1u << i)) {
        pt += steps[i];
        ++bits;
      }
    PadicNumber val = evaluate(f, pt);
    acc = ((order - bits) % 2 == 0) ? acc + val : acc - val;
  }
  return acc / denom;
}

/// Result of a grid supremum.
struct NormReport {
  Val value;            ///< the supremum found on the grid
  bool stabilized = false;  ///< value equals the level L-1 supremum
  int level = 0;
  /// Certified exponent: samples that vanished to working precision could hide
  /// norms down to p^-precision. value.exponent() < precision means exact.
  int precision = kInfinity;
};

namespace detail {

/// Integer image of a value table: value_k = p^shift * w_k with w_k mod p^digits.
struct ScaledTable {
  u64 p = 0;
  int shift = 0;
  int digits = 0;
  u64 mod = 1;
  std::vector<u64> w;
};

inline ScaledTable scale_table(const std::vector<PadicNumber>& vals) {
  ScaledTable t;
  t.p = vals.front().prime();
  int vmin = kInfinity, amin = kInfinity;
  for (const auto& v : vals) {
    if (!v.is_zero()) vmin = std::min(vmin, v.valuation());
    amin = std::min(amin, v.absolute_precision());
  }
  if (vmin == kInfinity) vmin = amin == kInfinity ? 0 : amin;
  t.shift = vmin;
  int digits = amin == kInfinity ? max_precision(t.p) : amin - vmin;
  digits = std::clamp(digits, 0, max_precision(t.p));
  t.digits = digits;
  t.mod = ipow(t.p, digits);
  for (const auto& v : vals) {
    if (v.is_zero() || digits == 0 || v.valuation() - vmin >= digits) {
      t.w.push_back(0);
      continue;
    }
    u64 m = ipow(t.p, digits - (v.valuation() - vmin));
    t.w.push_back(detail::mulmod(v.unit() % m, ipow(t.p, v.valuation() - vmin), t.mod));
  }
  return t;
}

inline int residue_valuation(u64 s, u64 p) {
  int k = 0;
  while (s % p == 0) {
    s /= p;
    ++k;
  }
  return k;
}

/// Sup over x in [0, p^L), steps d_1 <= ... <= d_v in [1, p^L) of
/// |Delta_{d_1}...Delta_{d_v} f(x)| / prod |d_i| for v = 0..t, using an integer
/// value table. Returns (min exponent, certified precision).
inline std::pair<int, int> grid_sup(const ScaledTable& tab, int t, int level) {
  const u64 p = tab.p;
  const u64 side = ipow(p, level);
  int best = kInfinity;
  int certified = kInfinity;
  auto consider = [&](u64 s, int step_val) {
    if (tab.digits == 0) return;
    if (s != 0) best = std::min(best, tab.shift + residue_valuation(s, p) - step_val);
  };
  if (tab.digits > 0) certified = tab.shift + tab.digits;
  for (u64 x = 0; x < side; ++x) consider(tab.w[x], 0);
  std::vector<int> vd(side);
  for (u64 d = 1; d < side; ++d) vd[d] = int_valuation(static_cast<i128>(d), p);
  std::vector<u64> steps;
  std::function<void(int, u64)> rec = [&](int remaining, u64 start) {
    if (remaining == 0) {
      int v = static_cast<int>(steps.size());
      int step_val = 0;
      for (u64 d : steps) step_val += vd[d];
      if (tab.digits > 0) certified = std::min(certified, tab.shift + tab.digits - step_val);
      for (u64 x = 0; x < side; ++x) {
        u128 acc = 0;
        for (unsigned mask = 0; mask < (1u << v); ++mask) {
          u64 pt = x;
          int bits = 0;
          for (int i = 0; i < v; ++i)
            if (mask & (1u << i)) {
              pt += steps[i];
              ++bits;
            }
          u64 w = tab.w[pt];
          acc += ((v - bits) % 2 == 0) ? w : (tab.mod - w);
        }
        consider(static_cast<u64>(acc % tab.mod), step_val);
      }
      return;
    }
    for (u64 d = start; d < side; ++d) {
      steps.push_back(d);
      rec(remaining - 1, d);
      steps.pop_back();
    }
  };
  for (int v = 1; v <= t; ++v) rec(v, 1);
  return {best, certified};
}

inline std::pair<int, int> norm_at_level(const MahlerSeries& f, int t, int level) {
  u64 side = ipow(f.p, level);
  u64 count = (static_cast<u64>(t) + 1) * (side - 1) + 1;
  std::vector<PadicNumber> vals;
  vals.reserve(count);
  for (u64 k = 0; k < count; ++k) vals.push_back(evaluate_at_integer(f, k));
  return grid_sup(scale_table(vals), t, level);
}

}  // namespace detail

/// Grid C(t) norm: max over v <= t of sup |Phi^v f| / |h_1...h_v| with
/// x, h_i, zeta_i ranging over representatives mod p^L. Only the products
/// zeta_i h_i enter the quotient, so the grid enumerates the steps directly.
inline NormReport norm_Ct(const MahlerSeries& f, int t, int level = kDefaultLevel) {
  if (t < 0 || t > kMaxSmoothness) throw DomainError("norm_Ct: smoothness order out of range");
  if (level < 1) throw DomainError("norm_Ct: level must be >= 1");
  auto [best, cert] = detail::norm_at_level(f, t, level);
  NormReport r;
  r.level = level;
  r.value = best == kInfinity ? Val::infinity() : Val(best);
  r.precision = cert;
  if (level >= 2) {
    auto prev = detail::norm_at_level(f, t, level - 1);
    r.stabilized = prev.first == best;
  }
  return r;
}

/// J(t, m) = ||binom(x, m)||_{C(t)} on the level-L grid.
inline NormReport basis_norm_J(u64 p, int t, int m, int level = kDefaultLevel) {
  if (m < 0) throw DomainError("basis_norm_J: negative degree");
  int prec = max_precision(p);
  return norm_Ct(MahlerSeries::basis(detail::exact_int(p, 1), m, prec, m), t, level);
}

struct AnalyticReport {
  bool analytic = false;
  Val margin = Val(0);
};

/// Truncated radius-1 analyticity test: the normalized coefficients
/// |a_m| * p^{v_p(m!)} (exponent e_m = v(a_m) - v_p(m!)) must decay across the
/// stored range. Exactly polynomial data (infinite tail) is analytic.
inline AnalyticReport is_analytic(const MahlerSeries& s) {
  AnalyticReport r;
  if (s.tail_val.is_infinite()) {
    r.analytic = true;
    r.margin = Val::infinity();
    return r;
  }
  const int D = s.degree_bound();
  std::vector<int> e(D + 1, kInfinity);
  for (int m = 0; m <= D; ++m)
    if (!s.coeffs[m].is_zero()) e[m] = s.coeffs[m].valuation() - factorial_valuation(m, s.p);
  // lower envelope from the right: E_k = min_{m >= k} e_m
  std::vector<int> env(D + 2, kInfinity);
  for (int m = D; m >= 0; --m) env[m] = std::min(env[m + 1], e[m]);
  int head = env[0];
  int tail = env[(D + 1) / 2];
  if (tail == kInfinity) {
    r.analytic = true;
    r.margin = Val::infinity();
    return r;
  }
  r.analytic = tail > head;
  r.margin = Val(tail - head);
  return r;
}

/// (sup_m |a_m| J(an, m), sup_k |b_k|) with J(an, m) = |1/m!| the Gauss norm of
/// binom(x, m) and b the monomial coefficients.
inline std::pair<Val, Val> analytic_norm_pair(const MahlerSeries& s) {
  if (!is_analytic(s).analytic) throw DomainError("analytic_norm_pair: series fails the analyticity test");
  Val lhs = Val::infinity();
  for (int m = 0; m <= s.degree_bound(); ++m)
    if (!s.coeffs[m].is_zero()) lhs = max_norm(lhs, Val(s.coeffs[m].valuation() - factorial_valuation(m, s.p)));
  return {lhs, to_monomial(s).gauss_norm()};
}

/// Term-wise derivative in the monomial basis, returned in the Mahler basis.
inline MahlerSeries derivative(const MahlerSeries& s) {
  MahlerSeries r = from_monomial(to_monomial(s).derivative(), s.degree_bound(), s.precision);
  r.tail_val = max_norm(r.tail_val, s.tail_val.is_infinite() ? Val::infinity() : s.tail_val);
  return r;
}

/// S with S' = s and S(0) = 0, via monomial integration. Degree bound grows by one.
inline MahlerSeries antiderivative(const MahlerSeries& s) {
  Polynomial q = to_monomial(s);
  std::vector<PadicNumber> out(q.degree() + 2, PadicNumber::zero(s.p));
  for (int k = 0; k <= q.degree(); ++k) {
    PadicNumber term = q.coeffs()[k] / detail::exact_int(s.p, k + 1);
    if (term.absolute_precision() <= 0)
      throw PrecisionError("antiderivative: precision exhausted at degree " + std::to_string(k + 1));
    out[k + 1] = term;
  }
  MahlerSeries r = from_monomial(Polynomial(s.p, std::move(out)), s.degree_bound() + 1, s.precision);
  if (!s.tail_val.is_infinite()) r.tail_val = max_norm(r.tail_val, Val(0));
  return r;
}

}  // namespace padicdiff
