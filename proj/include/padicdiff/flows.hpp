#pragma once

// Vector fields a(x)d on Z_p and their flows. The flow of A at time q is the
// operator exponential g^q = sum_s q^s A^s x / s!, computed in the monomial
// basis where A h = a h' is a product and a derivative. The logarithm of a
// near-identity map inverts this by a fixed-point scheme on the field.
//
// Norms of fields are Gauss norms of the monomial coefficients, which equal
// sup_m |a_m| |1/m!| on the Mahler side.

#include <cmath>
#include <vector>

#include "padicdiff/diffeo.hpp"
#include "padicdiff/mahler.hpp"
#include "padicdiff/polynomial.hpp"

namespace padicdiff {

struct VectorField {
  MahlerSeries a;  ///< coefficient of d
  Polynomial mono;  ///< the same coefficient in the monomial basis
  Val tail = Val::infinity();  ///< bound on omitted monomial terms

  static VectorField from_polynomial(const Polynomial& q, int degree, int precision) {
    VectorField v;
    Polynomial kept = q.truncated(degree);
    TruncationLog log;
    q.truncated(degree, &log);
    v.mono = kept;
    v.a = from_monomial(kept, degree, precision);
    v.tail = log.dropped;
    return v;
  }

  static VectorField from_series(const MahlerSeries& s) {
    VectorField v;
    v.a = s;
    v.mono = to_monomial(s);
    v.tail = s.tail_val;
    return v;
  }

  /// c x^m d.
  static VectorField monomial(const PadicNumber& c, int m, int degree, int precision) {
    return from_polynomial(Polynomial::monomial(c, m), std::max(degree, m), precision);
  }

  static VectorField zero(u64 p, int degree, int precision) {
    return from_polynomial(Polynomial(p), degree, precision);
  }

  u64 prime() const { return a.p; }
  int degree() const { return a.degree_bound(); }
  int precision() const { return a.precision; }
  /// ||A||: Gauss norm of the monomial coefficients.
  Val norm() const { return max_norm(mono.gauss_norm(), tail); }
};

/// Gauss norm of A - B with the certified exponent.
inline DistanceReport field_distance(const VectorField& A, const VectorField& B) {
  Polynomial d = A.mono - B.mono;
  int prec = std::min({d.absolute_precision(), A.tail.exponent(), B.tail.exponent()});
  return {max_norm(d.gauss_norm(), max_norm(A.tail, B.tail)), prec};
}

namespace detail {

/// A h = a h', truncated at degree D.
inline Polynomial apply_field(const Polynomial& a, const Polynomial& h, int D, TruncationLog* log) {
  return Polynomial::multiply(a, h.derivative(), D, log);
}

inline bool all_exact_zero(const Polynomial& q) {
  for (const auto& c : q.coeffs())
    if (!c.is_exact_zero()) return false;
  return true;
}

inline PadicNumber one(u64 p) { return PadicNumber::from_integer(p, 1, max_precision(p)); }

inline PadicNumber inverse_int(u64 p, i128 n) { return one(p) / PadicNumber::from_integer(p, n, max_precision(p)); }

}  // namespace detail

/// [u, v] = (a_u a_v' - a_v a_u') d.
inline VectorField bracket(const VectorField& u, const VectorField& v, int degree = -1) {
  if (u.prime() != v.prime()) throw DomainError("bracket: mismatched primes");
  int D = degree < 0 ? std::max(u.degree(), v.degree()) : degree;
  TruncationLog log;
  Polynomial r = detail::apply_field(u.mono, v.mono, D, &log) - detail::apply_field(v.mono, u.mono, D, &log);
  VectorField out = VectorField::from_polynomial(r, D, std::min(u.precision(), v.precision()));
  Val t = max_norm(log.dropped, max_norm(u.norm() * v.tail, v.norm() * u.tail));
  out.tail = max_norm(out.tail, t);
  return out;
}

namespace detail {

/// (c, m) for a field c x^m d; DomainError otherwise.
inline std::pair<PadicNumber, int> monomial_data(const VectorField& u) {
  int found = -1;
  for (int k = 0; k <= u.mono.degree(); ++k) {
    if (u.mono.coeff(k).is_zero()) continue;
    if (found >= 0) throw DomainError("ad_power: field is not a monomial");
    found = k;
  }
  if (found < 0) return {PadicNumber::zero(u.prime()), 0};
  return {u.mono.coeff(found), found};
}

}  // namespace detail

/// (ad u)^s v for u = xi x^m d, v = zeta x^n d:
/// xi^s zeta x^(n + s(m-1)) prod_{j<s} (n + j(m-1) - m) d.
inline VectorField ad_power(const VectorField& u, const VectorField& v, int s, int degree = -1) {
  if (s < 1) throw DomainError("ad_power: s must be >= 1");
  auto [xi, m] = detail::monomial_data(u);
  auto [zeta, n] = detail::monomial_data(v);
  const u64 p = u.prime();
  int D = degree < 0 ? std::max(u.degree(), v.degree()) : degree;
  int prec = std::min(u.precision(), v.precision());
  if (xi.is_zero() || zeta.is_zero()) return VectorField::zero(p, D, prec);
  PadicNumber c = zeta;
  for (int j = 0; j < s; ++j) c = c * xi * PadicNumber::from_integer(p, n + j * (m - 1) - m, max_precision(p));
  int deg = n + s * (m - 1);
  if (c.is_exact_zero() || deg < 0) return VectorField::zero(p, D, prec);
  return VectorField::from_polynomial(Polynomial::monomial(c, deg), D, prec);
}

struct FlowResult {
  Diffeo g_q;
  PadicNumber q;
  int terms_used = 0;
  int precision = kInfinity;  ///< absolute precision of g_q - id
  Polynomial monomial;       ///< g_q in the monomial basis
};

namespace detail {

/// sum_s q^s A^s x / s! truncated at degree D, to absolute precision `target`.
struct ExpSeries {
  Polynomial g;
  int terms = 0;
  int precision = kInfinity;
  bool terminated = false;
};

inline ExpSeries exp_series(const Polynomial& qa, int D, int target) {
  const u64 p = qa.prime();
  ExpSeries r;
  Polynomial x = Polynomial::identity(p);
  r.g = x;
  r.terms = 1;
  if (all_exact_zero(qa)) {
    r.terminated = true;
    return r;
  }
  const int v = qa.gauss_norm().exponent();
  TruncationLog log;
  Polynomial T = x;
  for (int s = 1;; ++s) {
    // ||A^s x / s!|| <= p^-(s v - (s-1)/(p-1)), increasing in s
    if (double(s) * v - double(s - 1) / double(p - 1) >= target) break;
    T = inverse_int(p, s) * apply_field(qa, T, D, &log);
    if (all_exact_zero(T)) {
      r.terminated = true;
      break;
    }
    r.g = r.g + T;
    r.terms = s + 1;
  }
  r.precision = std::min(r.terminated ? kInfinity : target, log.dropped.exponent());
  if (r.terminated && log.dropped.is_infinite()) r.precision = kInfinity;
  return r;
}

inline void check_exp_domain(const VectorField& A, const PadicNumber& q) {
  const u64 p = A.prime();
  int need = p == 2 ? 3 : 2;
  if (A.norm().exponent() < need)
    throw ConvergenceError("exp_field: ||A|| = p^-" + std::to_string(A.norm().exponent()) + " exceeds p^-" +
                           std::to_string(need));
  if (!q.is_zero() && q.valuation() < 0) throw ConvergenceError("exp_field: |q| > 1");
}

}  // namespace detail

/// g^q = exp(qA) x as a Diffeo.
inline FlowResult exp_field(const VectorField& A, const PadicNumber& q, int degree = -1, int precision = -1,
                            int levels = kDefaultLevel) {
  const u64 p = A.prime();
  if (q.prime() != p) throw DomainError("exp_field: mismatched primes");
  detail::check_exp_domain(A, q);
  int D = degree < 0 ? A.degree() : degree;
  int N = precision < 0 ? A.precision() : precision;
  FlowResult r;
  r.q = q;
  Polynomial qa = q * A.mono;
  int shift = A.norm().is_infinite() ? 0 : A.norm().exponent();
  auto e = detail::exp_series(qa, D, N + shift);
  r.terms_used = e.terms;
  int cap = std::min(e.precision, A.tail.is_infinite() ? kInfinity : A.tail.exponent() + (q.is_zero() ? 0 : q.valuation()));
  Polynomial g = cap == kInfinity ? e.g : e.g.with_absolute_cap(cap);
  MahlerSeries u = from_monomial(g - Polynomial::identity(p), std::max(D, g.degree()), N);
  if (cap != kInfinity) u.tail_val = max_norm(u.tail_val, Val(cap));
  r.g_q = Diffeo::from_series(std::move(u), levels, cap == kInfinity ? std::max(1, g.degree()) : -1);
  r.precision = std::min(cap, g.absolute_precision());
  r.monomial = std::move(g);
  return r;
}

/// One record of the logarithm iteration.
struct LogStep {
  int j = 0;
  Val change;  ///< ||A(j) - A(j-1)||
  Val norm;    ///< ||A(j)||
};

struct LogResult {
  VectorField A;
  std::vector<LogStep> steps;
  Val p_norm;  ///< ||P|| for f = id + P
  int precision = kInfinity;
};

namespace detail {

/// S_A(T) = sum_{s >= 1} A^s T / (s+1)!, so that exp(A)x - x = (I + S_A) a.
inline Polynomial s_operator(const Polynomial& a, const Polynomial& T, int D, int target, TruncationLog* log) {
  const u64 p = a.prime();
  Polynomial acc(p);
  if (all_exact_zero(a) || all_exact_zero(T)) return acc;
  const int va = a.gauss_norm().exponent();
  const int vt = T.gauss_norm().is_infinite() ? target : T.gauss_norm().exponent();
  Polynomial R = T;
  PadicNumber fact = one(p);
  fact = fact * PadicNumber::from_integer(p, 2, max_precision(p));
  for (int s = 1;; ++s) {
    // v((s+1)!) <= s / (p-1)
    if (vt + double(s) * va - double(s) / double(p - 1) >= target) break;
    R = apply_field(a, R, D, log);
    if (all_exact_zero(R)) break;
    acc = acc + (one(p) / fact) * R;
    fact = fact * PadicNumber::from_integer(p, s + 2, max_precision(p));
  }
  return acc;
}

inline bool negligible(const Polynomial& d, int target) {
  Val n = d.gauss_norm();
  return n.is_infinite() || n.exponent() >= target;
}

}  // namespace detail

/// The field A with exp(A)x = f. Outer step j solves (I + S_{A(j)}) A(j+1) = P
/// by Neumann iteration started at A(j); A(0) = P.
inline LogResult log_diffeo(const Diffeo& f, int max_iter = -1) {
  if (f.piecewise_data()) throw DomainError("log_diffeo: value-table elements have no series logarithm");
  if (!f.w_member()) throw DomainError("log_diffeo: f is not in W");
  const u64 p = f.prime();
  const int N = f.precision();
  const int J = max_iter < 0 ? N : max_iter;
  Polynomial P = to_monomial(f.series());
  const int D = std::max(f.degree(), P.degree());
  LogResult r;
  r.p_norm = P.gauss_norm();
  int target = std::min(f.series().absolute_precision(), P.absolute_precision());
  if (target == kInfinity) target = N + (r.p_norm.is_infinite() ? 0 : r.p_norm.exponent());
  if (r.p_norm.is_infinite()) {
    r.A = VectorField::zero(p, D, N);
    return r;
  }
  TruncationLog log;
  Polynomial a = P;
  r.steps.push_back({0, Val::infinity(), a.gauss_norm()});
  bool converged = false;
  Val last_change = Val::infinity();
  for (int j = 1; j <= J; ++j) {
    Polynomial T = a;
    bool inner = false;
    for (int it = 0; it < 4 * target + 8; ++it) {
      Polynomial next = P - detail::s_operator(a, T, D, target, &log);
      bool done = detail::negligible(next - T, target);
      T = std::move(next);
      if (done) {
        inner = true;
        break;
      }
    }
    if (!inner) throw ConvergenceError("log_diffeo: Neumann iteration stalled at outer step " + std::to_string(j));
    last_change = (T - a).gauss_norm();
    r.steps.push_back({j, last_change, T.gauss_norm()});
    bool done = detail::negligible(T - a, target);
    a = std::move(T);
    if (done) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("log_diffeo: no convergence after " + std::to_string(J) + " steps, residual " +
                           last_change.to_string());
  r.precision = std::min(target, log.dropped.exponent());
  r.A = VectorField::from_polynomial(a.with_absolute_cap(r.precision), D, N);
  if (r.precision != kInfinity) r.A.tail = max_norm(r.A.tail, Val(r.precision));
  return r;
}

struct MonomialFlow {
  Polynomial g;                         ///< sum_k q^k gamma(k, m)/k! x^(k(m-1)+1)
  std::vector<PadicNumber> normalized;  ///< gamma(k, m) / k!
  int terms = 0;
  int precision = kInfinity;  ///< lower bound on the valuations of omitted terms
};

/// gamma(k, m) = prod_{j=1}^{k-1} (j m - j + 1); gamma(0, m) = gamma(1, m) = 1.
inline i128 gamma_km(int k, int m) {
  i128 g = 1;
  for (int j = 1; j < k; ++j) g *= static_cast<i128>(j) * m - j + 1;
  return g;
}

/// Closed form of the flow of x^m d at time q with K terms.
inline MonomialFlow monomial_flow(int m, const PadicNumber& q, int K) {
  if (m < 0) throw DomainError("monomial_flow: m must be >= 0");
  const u64 p = q.prime();
  // term valuations are >= k v(q) - v(k!) > k (v(q) - 1/(p-1)), which must grow
  int need = p == 2 ? 2 : 1;
  if (!q.is_zero() && q.valuation() < need)
    throw ConvergenceError("monomial_flow: term valuations do not increase for v(q) = " +
                           std::to_string(q.valuation()));
  MonomialFlow r;
  r.g = Polynomial(p);
  PadicNumber qk = detail::one(p);
  PadicNumber fact = detail::one(p);
  for (int k = 0; k < K; ++k) {
    if (k > 0) {
      qk = qk * q;
      fact = fact * PadicNumber::from_integer(p, k, max_precision(p));
    }
    PadicNumber c = PadicNumber::from_integer(p, gamma_km(k, m), max_precision(p)) / fact;
    r.normalized.push_back(c);
    PadicNumber term = qk * c;
    int deg = k * (m - 1) + 1;
    if (term.is_exact_zero() || deg < 0) continue;
    r.g = r.g + Polynomial::monomial(term, deg);
    r.terms = k + 1;
  }
  if (!q.is_zero() && m != 0)
    r.precision = static_cast<int>(std::ceil(double(K) * q.valuation() - double(K - 1) / double(p - 1)));
  if (m == 0 && K >= 2) r.precision = kInfinity;
  return r;
}

/// distance(g^(q1+q2), g^q1 o g^q2, 0).
inline DistanceReport one_param_check(const VectorField& A, const PadicNumber& q1, const PadicNumber& q2,
                                      int degree = -1, int precision = -1, int levels = kDefaultLevel) {
  auto both = exp_field(A, q1 + q2, degree, precision, levels).g_q;
  auto a = exp_field(A, q1, degree, precision, levels).g_q;
  auto b = exp_field(A, q2, degree, precision, levels).g_q;
  return distance_report(both, compose(a, b), 0);
}

/// Baker-Campbell-Hausdorff field w with exp(w) = exp(u) o exp(v) to the given
/// order. The composite g_u o g_v acts on functions as e^V e^U, so
/// w = BCH(v, u) = u + v + [v,u]/2 + ([v,[v,u]] + [u,[u,v]])/12 - [u,[v,[v,u]]]/24.
inline VectorField bch_field(const VectorField& u, const VectorField& v, int order, int degree = -1) {
  if (order < 1 || order > 4) throw DomainError("bch: supported orders are 1..4");
  const u64 p = u.prime();
  int D = degree < 0 ? std::max(u.degree(), v.degree()) : degree;
  int N = std::min(u.precision(), v.precision());
  auto scaled = [&](i128 num, i128 den, const VectorField& x) {
    PadicNumber c = PadicNumber::from_rational(p, num, den, max_precision(p));
    VectorField r = VectorField::from_polynomial(c * x.mono, D, N);
    r.tail = max_norm(r.tail, c.norm() * x.tail);
    return r;
  };
  auto add = [&](const VectorField& x, const VectorField& y) {
    VectorField r = VectorField::from_polynomial(x.mono + y.mono, D, N);
    r.tail = max_norm(r.tail, max_norm(x.tail, y.tail));
    return r;
  };
  VectorField w = add(u, v);
  if (order >= 2) w = add(w, scaled(1, 2, bracket(v, u, D)));
  if (order >= 3) {
    w = add(w, scaled(1, 12, bracket(v, bracket(v, u, D), D)));
    w = add(w, scaled(1, 12, bracket(u, bracket(u, v, D), D)));
  }
  if (order >= 4) w = add(w, scaled(-1, 24, bracket(u, bracket(v, bracket(v, u, D), D), D)));
  return w;
}

/// distance(exp(w), exp(u) o exp(v), 0) for the order-r BCH field w.
inline DistanceReport bch_discrepancy(const VectorField& u, const VectorField& v, int order, int degree = -1,
                                      int precision = -1, int levels = kDefaultLevel) {
  VectorField w = bch_field(u, v, order, degree);
  const u64 p = u.prime();
  PadicNumber one = detail::one(p);
  auto ew = exp_field(w, one, degree, precision, levels).g_q;
  auto eu = exp_field(u, one, degree, precision, levels).g_q;
  auto ev = exp_field(v, one, degree, precision, levels).g_q;
  return distance_report(ew, compose(eu, ev), 0);
}

/// A with [A, d] = C: A = -(antiderivative of c) d.
inline VectorField solve_commutator(const VectorField& C) {
  return VectorField::from_series(-antiderivative(C.a));
}

/// Flow ODE at time q: compares the q-derivative sum_{s>=1} q^(s-1) A^s x/(s-1)!
/// with a(g^q(x)), both in the monomial basis.
inline DistanceReport flow_ode_check(const VectorField& A, const PadicNumber& q, int degree = -1, int precision = -1) {
  const u64 p = A.prime();
  detail::check_exp_domain(A, q);
  int D = degree < 0 ? A.degree() : degree;
  int N = precision < 0 ? A.precision() : precision;
  int shift = A.norm().is_infinite() ? 0 : A.norm().exponent();
  int target = N + shift;
  Polynomial qa = q * A.mono;
  auto e = detail::exp_series(qa, D, target);
  // d/dq: sum_{s>=1} q^(s-1) A^s x/(s-1)! = A (sum_{s>=0} q^s A^s x / s!) = a g'
  TruncationLog log;
  Polynomial lhs(p);
  Polynomial T = Polynomial::identity(p);
  if (!detail::all_exact_zero(A.mono)) {
    const int v = qa.gauss_norm().is_infinite() ? target : qa.gauss_norm().exponent();
    for (int s = 1;; ++s) {
      if (double(s - 1) * v - double(s - 1) / double(p - 1) + shift >= target) break;
      Polynomial AT = detail::apply_field(A.mono, T, D, &log);  // A^s x / (s-1)! q^(s-1)
      if (detail::all_exact_zero(AT)) break;
      lhs = lhs + AT;
      T = detail::inverse_int(p, s) * (q * AT);
    }
  }
  Polynomial rhs = A.mono.compose(e.g, D, &log);
  Polynomial diff = lhs - rhs;
  int prec = std::min({e.precision, log.dropped.exponent(), diff.absolute_precision(), target});
  return {diff.gauss_norm(), prec};
}

}  // namespace padicdiff
