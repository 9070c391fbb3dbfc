#pragma once

// Near-identity diffeomorphisms of Z_p. A Diffeo carries the Mahler series of
// f - id together with permutation tables of Z/p^l for l = 1..L. Tables
// compose and invert exactly; the series is re-extracted from values after
// every group operation. Locally constant translations (ball swaps) are kept
// as offset tables, a class closed under composition and inversion.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "padicdiff/mahler.hpp"
#include "padicdiff/polynomial.hpp"

namespace padicdiff {

enum class ReprKind { Series, ValueTable };

/// f(x) = x + offsets[x mod p^level].
struct PiecewiseTranslation {
  int level = 1;
  std::vector<PadicNumber> offsets;
};

using Table = std::vector<u64>;

struct DistanceReport {
  Val value;
  /// Exponent up to which the comparison is certified; value.exponent() >=
  /// precision means "agree to working precision".
  int precision = kInfinity;
};

struct WeightedNorm {
  Val value;
  int witnesses = 0;  ///< #{m : |a_m| J(t, m) p^(1+m) > p^-2}
};

namespace detail {

inline PadicNumber integer_mod(u64 p, u64 y, int digits) {
  if (y == 0) return PadicNumber::zero(p, digits);
  return PadicNumber::from_integer(p, static_cast<i128>(y), max_precision(p)).with_absolute_cap(digits);
}

/// Grid C(t) norm of an integer-indexed value table at the given level.
inline DistanceReport grid_norm(const std::vector<PadicNumber>& vals, int t, int level) {
  auto [best, cert] = grid_sup(scale_table(vals), t, level);
  return {best == kInfinity ? Val::infinity() : Val(best), cert};
}

/// Sup of the stored coefficients; the tail bound only limits the certified precision.
inline DistanceReport series_report(const MahlerSeries& s) {
  Val v = Val::infinity();
  for (const auto& c : s.coeffs) v = max_norm(v, c.norm());
  return {v, s.absolute_precision()};
}

inline bool is_permutation(const Table& t) {
  std::vector<char> seen(t.size(), 0);
  for (u64 y : t) {
    if (y >= t.size() || seen[y]) return false;
    seen[y] = 1;
  }
  return true;
}

}  // namespace detail

class Diffeo {
 public:
  Diffeo() = default;

  static Diffeo identity(u64 p, int precision, int degree = kDefaultDegree, int levels = kDefaultLevel) {
    Diffeo d;
    d.u_ = MahlerSeries::zero(p, precision, degree);
    d.degree_ = degree;
    d.levels_ = levels;
    d.poly_degree_ = 1;
    d.build_tables();
    d.w_member_ = true;
    return d;
  }

  /// f = id + u. poly_degree is the degree of f when it is known to be a polynomial.
  static Diffeo from_series(MahlerSeries u, int levels = kDefaultLevel, int poly_degree = -1) {
    if (!u.maps_into_integers()) throw DomainError("Diffeo: f - id must map Z_p into Z_p");
    if (lipschitz_exponent(u) < 0) throw DomainError("Diffeo: f - id is not 1-Lipschitz");
    Diffeo d;
    d.degree_ = u.degree_bound();
    d.u_ = std::move(u);
    d.levels_ = levels;
    d.poly_degree_ = poly_degree;
    d.build_tables();
    d.w_member_ = d.compute_w();
    return d;
  }

  /// The polynomial map x -> f(x). Degrees up to 4D are stored without truncation.
  static Diffeo from_polynomial(const Polynomial& f, int precision, int degree = kDefaultDegree,
                                int levels = kDefaultLevel) {
    u64 p = f.prime();
    Polynomial u = f - Polynomial::identity(p);
    int deg = std::max(1, f.degree());
    int keep = deg <= 4 * degree ? std::max(degree, deg) : degree;
    Diffeo d = from_series(from_monomial(u, keep, precision), levels, deg);
    d.degree_ = degree;
    return d;
  }

  /// x -> x + offsets[x mod p^k].
  static Diffeo piecewise(u64 p, int k, std::vector<PadicNumber> offsets, int precision,
                          int degree = kDefaultDegree, int levels = kDefaultLevel) {
    if (k < 1) throw DomainError("piecewise: level must be >= 1");
    if (offsets.size() != ipow(p, k)) throw DomainError("piecewise: need p^k offsets");
    for (const auto& c : offsets)
      if (!c.is_zero() && c.valuation() < 0) throw DomainError("piecewise: offsets must be p-adic integers");
    Diffeo d;
    d.kind_ = ReprKind::ValueTable;
    d.pw_ = PiecewiseTranslation{k, std::move(offsets)};
    d.degree_ = degree;
    d.levels_ = levels;
    d.u_ = piecewise_series(*d.pw_, precision, degree);
    d.build_tables();
    d.w_member_ = d.compute_w();
    return d;
  }

  u64 prime() const { return u_.p; }
  int precision() const { return u_.precision; }
  int degree() const { return degree_; }
  int levels() const { return levels_; }
  ReprKind kind() const { return kind_; }
  const MahlerSeries& series() const { return u_; }
  const std::optional<PiecewiseTranslation>& piecewise_data() const { return pw_; }
  /// Cached permutation table of Z/p^l.
  const Table& table(int l) const {
    if (l < 1 || l > levels_) throw DomainError("Diffeo: level " + std::to_string(l) + " is not cached");
    return tables_[l - 1];
  }
  const std::vector<Table>& tables() const { return tables_; }
  bool w_member() const { return w_member_; }
  /// The stored tail bound was read off a coefficient window, not proven.
  bool tail_estimated() const { return tail_estimated_; }
  /// Degree of f as a polynomial, -1 when unknown.
  int poly_degree() const { return poly_degree_; }

  /// f(y) for y in Z_p known to finitely many digits.
  PadicNumber apply(const PadicNumber& y) const {
    if (y.prime() != prime()) throw DomainError("Diffeo: mismatched primes");
    if (!y.is_zero() && y.valuation() < 0) throw DomainError("Diffeo: argument outside Z_p");
    if (pw_) return y + pw_->offsets[y.residue(pw_->level)];
    return y + evaluate_stable(u_, y);
  }

  PadicNumber apply_at_integer(u64 k) const {
    PadicNumber x = PadicNumber::from_integer(prime(), static_cast<i128>(k), max_precision(prime()));
    if (pw_) return x + pw_->offsets[k % ipow(prime(), pw_->level)];
    return x + evaluate_at_integer(u_, k);
  }

  /// Distance to the identity in the grid C(t) norm (exact offsets for value tables at t = 0).
  DistanceReport distance_to_identity(int t) const {
    if (t == 0) {
      if (pw_) {
        DistanceReport r{Val::infinity(), kInfinity};
        for (const auto& c : pw_->offsets) {
          r.value = max_norm(r.value, c.norm());
          r.precision = std::min(r.precision, c.absolute_precision());
        }
        return r;
      }
      return detail::series_report(u_);
    }
    std::vector<PadicNumber> vals;
    u64 count = (static_cast<u64>(t) + 1) * (ipow(prime(), levels_) - 1) + 1;
    for (u64 k = 0; k < count; ++k)
      vals.push_back(apply_at_integer(k) - PadicNumber::from_integer(prime(), static_cast<i128>(k), max_precision(prime())));
    return detail::grid_norm(vals, t, levels_);
  }

  friend Diffeo compose(const Diffeo& f, const Diffeo& g);
  friend Diffeo invert(const Diffeo& f);

 private:
  static MahlerSeries piecewise_series(const PiecewiseTranslation& pw, int precision, int degree) {
    u64 p = pw.offsets.front().prime();
    u64 period = ipow(p, pw.level);
    std::vector<PadicNumber> vals;
    for (int k = 0; k <= degree; ++k) vals.push_back(pw.offsets[static_cast<u64>(k) % period]);
    MahlerSeries s = mahler_coeffs(std::span<const PadicNumber>(vals), degree);
    s.precision = precision;
    // Delta^(p^k) = p * (integral operator) on p^k-periodic functions, so
    // v(a_m) >= floor(m / p^k) + min v(c).
    int vmin = kInfinity;
    for (const auto& c : pw.offsets)
      vmin = std::min(vmin, c.is_zero() ? c.absolute_precision() : c.valuation());
    if (vmin != kInfinity) s.tail_val = Val(static_cast<int>((degree + 1) / period) + vmin);
    return s;
  }

  void build_tables() {
    tables_.clear();
    const u64 p = prime();
    for (int l = 1; l <= levels_; ++l) {
      u64 side = ipow(p, l);
      Table t(side);
      for (u64 x = 0; x < side; ++x) t[x] = apply_at_integer(x).residue(l);
      tables_.push_back(std::move(t));
    }
  }

  bool compute_w() const {
    for (int t = 0; t <= 1; ++t) {
      DistanceReport r = distance_to_identity(t);
      if (r.value.exponent() < 2 || r.precision < 2) return false;
    }
    return true;
  }

  MahlerSeries u_;
  ReprKind kind_ = ReprKind::Series;
  std::optional<PiecewiseTranslation> pw_;
  std::vector<Table> tables_;
  int degree_ = kDefaultDegree;
  int levels_ = kDefaultLevel;
  int poly_degree_ = -1;
  bool w_member_ = false;
  bool tail_estimated_ = false;
};

namespace detail {

inline void check_compatible(const Diffeo& f, const Diffeo& g) {
  if (f.prime() != g.prime()) throw DomainError("Diffeo: mismatched primes");
  if (f.levels() != g.levels()) throw DomainError("Diffeo: mismatched cached levels");
}

}  // namespace detail

/// f o g.
inline Diffeo compose(const Diffeo& f, const Diffeo& g) {
  detail::check_compatible(f, g);
  const u64 p = f.prime();
  Diffeo r;
  r.levels_ = f.levels_;
  r.degree_ = std::max(f.degree_, g.degree_);
  for (int l = 1; l <= f.levels_; ++l) {
    const Table& tf = f.tables_[l - 1];
    const Table& tg = g.tables_[l - 1];
    Table t(tf.size());
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = tf[tg[x]];
    r.tables_.push_back(std::move(t));
  }
  const int N = std::min(f.precision(), g.precision());
  if (f.pw_ && g.pw_) {
    int k = std::max(f.pw_->level, g.pw_->level);
    u64 period = ipow(p, k);
    std::vector<PadicNumber> c(period);
    for (u64 x = 0; x < period; ++x) {
      PadicNumber gx = g.apply_at_integer(x);
      c[x] = f.apply(gx) - PadicNumber::from_integer(p, static_cast<i128>(x), max_precision(p));
    }
    r.kind_ = ReprKind::ValueTable;
    r.pw_ = PiecewiseTranslation{k, std::move(c)};
    r.u_ = Diffeo::piecewise_series(*r.pw_, N, r.degree_);
    r.w_member_ = r.compute_w();
    return r;
  }
  int deg = (f.poly_degree_ > 0 && g.poly_degree_ > 0) ? f.poly_degree_ * g.poly_degree_ : -1;
  bool exact = deg > 0 && deg <= 4 * r.degree_;
  int M = exact ? std::max(r.degree_, deg) : 2 * r.degree_;
  std::vector<PadicNumber> vals;
  for (int k = 0; k <= M; ++k)
    vals.push_back(f.apply(g.apply_at_integer(static_cast<u64>(k))) -
                   PadicNumber::from_integer(p, k, max_precision(p)));
  MahlerSeries s = mahler_coeffs(std::span<const PadicNumber>(vals), M);
  s.precision = N;
  if (exact) {
    r.poly_degree_ = deg;
  } else {
    s = s.resized(r.degree_);
    r.tail_estimated_ = true;
  }
  r.u_ = std::move(s);
  r.w_member_ = r.compute_w();
  return r;
}

/// Two-sided inverse: tables inverted level by level, values of f^-1 lifted
/// digit by digit, series re-extracted.
inline Diffeo invert(const Diffeo& f) {
  const u64 p = f.prime();
  for (int l = 1; l <= f.levels_; ++l)
    if (!detail::is_permutation(f.tables_[l - 1]))
      throw IntegrityError("invert: cached table at level " + std::to_string(l) + " is not a bijection");
  Diffeo r;
  r.levels_ = f.levels_;
  r.degree_ = f.degree_;
  for (const Table& t : f.tables_) {
    Table inv(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) inv[t[x]] = x;
    r.tables_.push_back(std::move(inv));
  }
  if (f.pw_) {
    int k = f.pw_->level;
    u64 period = ipow(p, k);
    const Table& sigma = f.tables_.size() >= static_cast<std::size_t>(k) ? f.tables_[k - 1] : Table{};
    Table s(period);
    for (u64 x = 0; x < period; ++x) s[x] = sigma.empty() ? f.apply_at_integer(x).residue(k) : sigma[x];
    if (!detail::is_permutation(s)) throw IntegrityError("invert: offsets do not permute the balls");
    std::vector<PadicNumber> c(period);
    for (u64 x = 0; x < period; ++x) c[s[x]] = -f.pw_->offsets[x];
    r.kind_ = ReprKind::ValueTable;
    r.pw_ = PiecewiseTranslation{k, std::move(c)};
    r.u_ = Diffeo::piecewise_series(*r.pw_, f.precision(), r.degree_);
    r.w_member_ = r.compute_w();
    return r;
  }
  if (f.u_.sup_norm().exponent() < 1) throw DomainError("invert: requires ||f - id|| <= 1/p");
  const int L = f.levels_;
  const Table& top = r.tables_[L - 1];
  const int cap = max_precision(p) - 1;
  auto lift = [&](u64 j) {
    PadicNumber target = PadicNumber::from_integer(p, static_cast<i128>(j), max_precision(p));
    u64 y = top[j % ipow(p, L)];
    int l = L;
    for (; l < cap; ++l) {
      u64 step = ipow(p, l);
      int hits = 0;
      bool known = true;
      u64 next = y;
      for (u64 d = 0; d < p; ++d) {
        PadicNumber fy = f.apply_at_integer(y + d * step);
        if (fy.absolute_precision() < l + 1) {
          known = false;
          break;
        }
        if ((fy - target).with_absolute_cap(l + 1).is_zero()) {
          ++hits;
          next = y + d * step;
        }
      }
      if (!known) break;
      if (hits != 1) throw IntegrityError("invert: f is not bijective mod p^" + std::to_string(l + 1));
      y = next;
    }
    return detail::integer_mod(p, y, l);
  };
  bool linear = f.poly_degree_ == 1;
  int M = linear ? r.degree_ : 2 * r.degree_;
  std::vector<PadicNumber> vals;
  for (int j = 0; j <= M; ++j)
    vals.push_back(lift(static_cast<u64>(j)) - PadicNumber::from_integer(p, j, max_precision(p)));
  MahlerSeries s = mahler_coeffs(std::span<const PadicNumber>(vals), M);
  s.precision = f.precision();
  if (linear) {
    r.poly_degree_ = 1;
  } else {
    s = s.resized(r.degree_);
    r.tail_estimated_ = true;
  }
  r.u_ = std::move(s);
  r.w_member_ = r.compute_w();
  return r;
}

/// rho_0^t(f, g) as the grid C(t) norm of f - g; exact offsets for two value tables at t = 0.
inline DistanceReport distance_report(const Diffeo& f, const Diffeo& g, int t, std::optional<int> level = {}) {
  detail::check_compatible(f, g);
  if (t < 0 || t > kMaxSmoothness) throw DomainError("distance: smoothness order out of range");
  const u64 p = f.prime();
  if (t == 0) {
    if (f.piecewise_data() && g.piecewise_data()) {
      const auto& a = *f.piecewise_data();
      const auto& b = *g.piecewise_data();
      u64 period = ipow(p, std::max(a.level, b.level));
      DistanceReport r{Val::infinity(), kInfinity};
      for (u64 x = 0; x < period; ++x) {
        PadicNumber d = a.offsets[x % ipow(p, a.level)] - b.offsets[x % ipow(p, b.level)];
        r.value = max_norm(r.value, d.norm());
        r.precision = std::min(r.precision, d.absolute_precision());
      }
      return r;
    }
    auto is_id = [](const Diffeo& h) {
      return !h.piecewise_data() && h.series().tail_val.is_infinite() &&
             std::all_of(h.series().coeffs.begin(), h.series().coeffs.end(),
                         [](const PadicNumber& c) { return c.is_exact_zero(); });
    };
    if (is_id(g)) return f.distance_to_identity(0);
    if (is_id(f)) return g.distance_to_identity(0);
    return detail::series_report(f.series() - g.series());
  }
  int L = level.value_or(f.levels());
  u64 count = (static_cast<u64>(t) + 1) * (ipow(p, L) - 1) + 1;
  std::vector<PadicNumber> vals;
  for (u64 k = 0; k < count; ++k) vals.push_back(f.apply_at_integer(k) - g.apply_at_integer(k));
  return detail::grid_norm(vals, t, L);
}

inline Val distance(const Diffeo& f, const Diffeo& g, int t) { return distance_report(f, g, t).value; }

/// min over x mod p^l of v(f(x) - g(x)) on the cached tables; +inf when they agree.
inline Val table_distance(const Diffeo& f, const Diffeo& g, int l) {
  detail::check_compatible(f, g);
  const Table& a = f.table(l);
  const Table& b = g.table(l);
  u64 mod = ipow(f.prime(), l);
  Val best = Val::infinity();
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != b[x]) best = max_norm(best, Val(detail::residue_valuation((a[x] + mod - b[x]) % mod, f.prime())));
  return best;
}

/// True iff rho_0^tau(f, id) <= p^-2 for every tau <= t, certified to at least two digits.
inline bool in_W(const Diffeo& f, int t) {
  for (int tau = 0; tau <= t; ++tau) {
    DistanceReport r = f.distance_to_identity(tau);
    if (r.value.exponent() < 2 || r.precision < 2) return false;
  }
  return true;
}

/// |f(x) - f(y)| = |x - y| for all pairs mod p^l (valuations capped at l).
inline bool is_isometry(const Diffeo& f, int l) {
  const Table& t = f.table(l);
  const u64 p = f.prime();
  const u64 mod = ipow(p, l);
  auto v = [&](u64 a, u64 b) {
    u64 d = (a + mod - b) % mod;
    return d == 0 ? l : std::min(l, detail::residue_valuation(d, p));
  };
  for (u64 x = 0; x < mod; ++x)
    for (u64 y = x + 1; y < mod; ++y)
      if (v(t[x], t[y]) != v(x, y)) return false;
  return true;
}

/// sup_m |a_m(f - id)| J(t, m) p^(1+m) for a single coordinate, and the
/// number of m whose term exceeds p^-2.
inline WeightedNorm weighted_norm_a(const Diffeo& f, int t, int level = kDefaultLevel) {
  const MahlerSeries& u = f.series();
  WeightedNorm r{Val::infinity(), 0};
  for (int m = 0; m <= u.degree_bound(); ++m) {
    const auto& c = u.coeffs[m];
    if (c.is_zero()) continue;
    Val J = basis_norm_J(u.p, t, m, level).value;
    Val term(c.valuation() + J.exponent() - 1 - m);
    r.value = max_norm(r.value, term);
    if (term.exponent() < 2) ++r.witnesses;
  }
  return r;
}

/// id + sum_{k <= max_degree} b_k x^k with b_k in p^2 Z: an element of W.
inline Diffeo random_w_element(std::mt19937_64& rng, u64 p, int precision, int degree = kDefaultDegree,
                               int levels = kDefaultLevel, int max_degree = 4) {
  std::vector<PadicNumber> c;
  const i128 p2 = static_cast<i128>(p * p);
  for (int k = 0; k <= max_degree; ++k) {
    i128 b = static_cast<i128>(rng() % 41) - 20;
    c.push_back(PadicNumber::from_integer(p, b * p2, precision));
  }
  Polynomial f = Polynomial(p, std::move(c)) + Polynomial::identity(p);
  return Diffeo::from_polynomial(f, precision, degree, levels);
}

}  // namespace padicdiff
