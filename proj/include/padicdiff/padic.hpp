#pragma once

// Fixed-precision p-adic numbers with per-value precision tracking.
//
// A nonzero PadicNumber is p^v * u with u a unit known modulo p^N (N is the
// relative precision); the value is therefore known modulo p^(v+N), the
// absolute precision. Zero carries only an absolute precision, which is
// kInfinity for an exact zero. All norms are kept as integer exponents (Val).

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "padicdiff/errors.hpp"

namespace padicdiff {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// Non-Archimedean norm value p^(-exponent). Ordered by norm, so a larger
/// exponent compares as a smaller Val. Default-constructed Val is the norm 0.
class Val {
 public:
  constexpr Val() = default;
  constexpr explicit Val(int exponent) : exponent_(exponent) {}

  static constexpr Val infinity() { return Val(); }
  static constexpr Val one() { return Val(0); }

  constexpr int exponent() const { return exponent_; }
  constexpr bool is_infinite() const { return exponent_ == kInfinity; }

  friend constexpr std::strong_ordering operator<=>(Val a, Val b) {
    return b.exponent_ <=> a.exponent_;
  }
  friend constexpr bool operator==(Val a, Val b) = default;

  /// Product of norms.
  friend constexpr Val operator*(Val a, Val b) {
    if (a.is_infinite() || b.is_infinite()) return Val::infinity();
    return Val(a.exponent_ + b.exponent_);
  }

  std::string to_string() const {
    return is_infinite() ? std::string("inf") : std::to_string(exponent_);
  }

 private:
  int exponent_ = kInfinity;
};

/// Larger of two norms (smaller exponent).
constexpr Val max_norm(Val a, Val b) { return a.exponent() <= b.exponent() ? a : b; }
constexpr Val min_norm(Val a, Val b) { return a.exponent() >= b.exponent() ? a : b; }

namespace detail {

inline int add_exp(int a, int b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 invmod(u64 a, u64 m) {
  i128 old_r = static_cast<i128>(a % m), r = static_cast<i128>(m);
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) throw DomainError("invmod: element is not a unit");
  i128 res = old_s % static_cast<i128>(m);
  if (res < 0) res += m;
  return static_cast<u64>(res);
}

}  // namespace detail

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Largest relative precision N with p^N <= 2^62.
inline int max_precision(u64 p) {
  int n = 0;
  u128 acc = 1;
  while (acc * p <= (u128(1) << 62)) {
    acc *= p;
    ++n;
  }
  return n;
}

inline u64 ipow(u64 p, int n) {
  u64 r = 1;
  for (int i = 0; i < n; ++i) r *= p;
  return r;
}

/// v_p(n) for n != 0.
inline int int_valuation(i128 n, u64 p) {
  if (n == 0) return kInfinity;
  if (n < 0) n = -n;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// v_p(k!) via Legendre: (k - digit_sum_p(k)) / (p - 1).
inline int factorial_valuation(u64 k, u64 p) {
  if (p < 2) throw DomainError("factorial_valuation: p must be a prime >= 2");
  u64 digits = 0;
  for (u64 m = k; m > 0; m /= p) digits += m % p;
  return static_cast<int>((k - digits) / (p - 1));
}

class PadicNumber {
 public:
  PadicNumber() = default;

  static PadicNumber zero(u64 p, int absolute_precision = kInfinity) {
    check_prime(p);
    PadicNumber z;
    z.p_ = p;
    z.val_ = kInfinity;
    z.abs_ = absolute_precision;
    return z;
  }

  static PadicNumber from_integer(u64 p, i128 n, int precision) {
    check_prime(p);
    if (n == 0) return zero(p);
    return from_scaled(p, n, 0, precision);
  }

  static PadicNumber from_rational(u64 p, i128 num, i128 den, int precision) {
    check_prime(p);
    if (den == 0) throw DomainError("from_rational: zero denominator");
    if (num == 0) return zero(p);
    PadicNumber a = from_integer(p, num, precision);
    PadicNumber b = from_integer(p, den, precision);
    return a / b;
  }

  /// Builds p^valuation * unit with the unit known mod p^precision.
  static PadicNumber from_parts(u64 p, int valuation, u64 unit, int precision) {
    check_prime(p);
    if (precision <= 0 || precision > max_precision(p))
      throw DomainError("from_parts: precision out of range");
    u64 mod = ipow(p, precision);
    if (unit >= mod || unit % p == 0)
      throw DomainError("from_parts: unit must be a residue mod p^N coprime to p");
    PadicNumber x;
    x.p_ = p;
    x.val_ = valuation;
    x.unit_ = unit;
    x.abs_ = valuation + precision;
    return x;
  }

  u64 prime() const { return p_; }
  bool is_zero() const { return val_ == kInfinity; }
  bool is_exact_zero() const { return is_zero() && abs_ == kInfinity; }
  /// v_p(x); kInfinity for zero.
  int valuation() const { return val_; }
  /// Known modulo p^absolute_precision().
  int absolute_precision() const { return abs_; }
  /// Relative precision N of a nonzero value; 0 for zero.
  int precision() const { return is_zero() ? 0 : abs_ - val_; }
  u64 unit() const { return unit_; }
  Val norm() const { return Val(val_); }

  /// Drops digits beyond p^cap.
  PadicNumber with_absolute_cap(int cap) const {
    if (cap >= abs_) return *this;
    if (val_ >= cap) return zero(p_, cap);
    PadicNumber r = *this;
    r.abs_ = cap;
    r.unit_ = unit_ % ipow(p_, cap - val_);
    return r;
  }

  /// Value mod p^k as an integer in [0, p^k). Requires |x| <= 1 and k digits.
  u64 residue(int k) const {
    if (k <= 0) return 0;
    if (k > max_precision(p_)) throw DomainError("residue: level too large");
    if (is_zero()) {
      if (abs_ < k) throw PrecisionError("residue: zero known only to p^" + std::to_string(abs_));
      return 0;
    }
    if (val_ < 0) throw DomainError("residue: value is not a p-adic integer");
    if (abs_ < k) throw PrecisionError("residue: value known only to p^" + std::to_string(abs_));
    if (val_ >= k) return 0;
    u64 mod = ipow(p_, k);
    return detail::mulmod(unit_ % mod, ipow(p_, val_), mod);
  }

  PadicNumber operator-() const {
    if (is_zero()) return *this;
    PadicNumber r = *this;
    u64 mod = ipow(p_, abs_ - val_);
    r.unit_ = mod - unit_;
    return r;
  }

  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
    same_prime(x, y);
    u64 p = x.p_;
    int abs = std::min(x.abs_, y.abs_);
    if (x.is_zero() && y.is_zero()) return zero(p, abs);
    if (x.is_zero()) return y.with_absolute_cap(abs);
    if (y.is_zero()) return x.with_absolute_cap(abs);
    const PadicNumber& lo = x.val_ <= y.val_ ? x : y;
    const PadicNumber& hi = x.val_ <= y.val_ ? y : x;
    int v = lo.val_;
    if (v >= abs) return zero(p, abs);
    int m = abs - v;
    u64 mod = ipow(p, m);
    u64 s = lo.unit_ % mod;
    int shift = hi.val_ - v;
    if (shift < m) {
      u64 term = detail::mulmod(hi.unit_ % mod, ipow(p, shift), mod);
      s = static_cast<u64>((static_cast<u128>(s) + term) % mod);
    }
    if (s == 0) return zero(p, abs);
    int k = 0;
    while (s % p == 0) {
      s /= p;
      ++k;
    }
    PadicNumber r;
    r.p_ = p;
    r.val_ = v + k;
    r.unit_ = s;
    r.abs_ = abs;
    return r;
  }

  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
    same_prime(x, y);
    u64 p = x.p_;
    if (x.is_exact_zero() || y.is_exact_zero()) return zero(p);
    if (x.is_zero() || y.is_zero()) {
      // O(p^a) * y = O(p^(a + v(y))) and O(p^a) * O(p^b) = O(p^(a+b)).
      int a = x.is_zero() ? x.abs_ : x.val_;
      int b = y.is_zero() ? y.abs_ : y.val_;
      return zero(p, detail::add_exp(a, b));
    }
    int n = std::min(x.abs_ - x.val_, y.abs_ - y.val_);
    u64 mod = ipow(p, n);
    PadicNumber r;
    r.p_ = p;
    r.val_ = x.val_ + y.val_;
    r.unit_ = detail::mulmod(x.unit_ % mod, y.unit_ % mod, mod);
    r.abs_ = r.val_ + n;
    return r;
  }

  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
    same_prime(x, y);
    u64 p = x.p_;
    if (y.is_exact_zero()) throw DomainError("division by zero");
    if (y.is_zero())
      throw PrecisionError("division by an inexact zero O(p^" + std::to_string(y.abs_) + ")");
    if (x.is_zero()) {
      int a = x.abs_ == kInfinity ? kInfinity : x.abs_ - y.val_;
      return zero(p, a);
    }
    int n = std::min(x.abs_ - x.val_, y.abs_ - y.val_);
    u64 mod = ipow(p, n);
    PadicNumber r;
    r.p_ = p;
    r.val_ = x.val_ - y.val_;
    r.unit_ = detail::mulmod(x.unit_ % mod, detail::invmod(y.unit_ % mod, mod), mod);
    r.abs_ = r.val_ + n;
    return r;
  }

  PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
  PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
  PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }
  PadicNumber& operator/=(const PadicNumber& o) { return *this = *this / o; }

  /// Equality at the joint precision: x - y is zero to the available digits.
  friend bool operator==(const PadicNumber& x, const PadicNumber& y) {
    return (x - y).is_zero();
  }

  /// Bitwise equality of the stored representation.
  bool identical(const PadicNumber& o) const {
    return p_ == o.p_ && val_ == o.val_ && abs_ == o.abs_ && unit_ == o.unit_;
  }

  std::string to_string() const {
    std::string tail = abs_ == kInfinity ? std::string() : " + O(" + std::to_string(p_) + "^" + std::to_string(abs_) + ")";
    if (is_zero()) return abs_ == kInfinity ? std::string("0") : "O(" + std::to_string(p_) + "^" + std::to_string(abs_) + ")";
    std::string head = val_ == 0 ? std::string() : std::to_string(p_) + "^" + std::to_string(val_) + " * ";
    return head + std::to_string(unit_) + tail;
  }

 private:
  static void check_prime(u64 p) {
    if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  }

  static void same_prime(const PadicNumber& x, const PadicNumber& y) {
    if (x.p_ != y.p_)
      throw DomainError("mismatched primes " + std::to_string(x.p_) + " and " + std::to_string(y.p_));
  }

  static PadicNumber from_scaled(u64 p, i128 n, int extra_val, int precision) {
    if (precision <= 0) throw DomainError("precision must be positive");
    precision = std::min(precision, max_precision(p));
    int v = 0;
    while (n % static_cast<i128>(p) == 0) {
      n /= static_cast<i128>(p);
      ++v;
    }
    u64 mod = ipow(p, precision);
    i128 r = n % static_cast<i128>(mod);
    if (r < 0) r += mod;
    PadicNumber x;
    x.p_ = p;
    x.val_ = v + extra_val;
    x.unit_ = static_cast<u64>(r);
    x.abs_ = x.val_ + precision;
    return x;
  }

  u64 p_ = 0;
  int val_ = kInfinity;
  int abs_ = kInfinity;
  u64 unit_ = 0;
};

/// p^k as a PadicNumber with the given relative precision.
inline PadicNumber p_power(u64 p, int k, int precision) {
  return PadicNumber::from_parts(p, k, 1, std::min(precision, max_precision(p)));
}

/// Sum of x^k / k! for v(x) >= 1 (p odd) or v(x) >= 2 (p = 2).
/// Term valuations are at least k*v - (k-1)/(p-1), so the tail beyond the
/// stopping index lies below the absolute precision of the result.
inline PadicNumber exp_scalar(const PadicNumber& x) {
  u64 p = x.prime();
  int min_val = p == 2 ? 2 : 1;
  if (x.is_zero()) {
    int prec = x.absolute_precision() == kInfinity ? max_precision(p) : std::min(x.absolute_precision(), max_precision(p));
    return PadicNumber::from_integer(p, 1, prec);
  }
  if (x.valuation() < min_val)
    throw DomainError("exp_scalar: argument outside the convergence domain (v(x) = " +
                      std::to_string(x.valuation()) + ")");
  int target = x.absolute_precision();
  PadicNumber sum = PadicNumber::from_integer(p, 1, target);
  PadicNumber term = sum;
  const int v = x.valuation();
  for (int k = 1;; ++k) {
    // lower bound on v(x^k / k!)
    double bound = k * v - double(k - 1) / double(p - 1);
    if (bound >= target) break;
    term = term * x / PadicNumber::from_integer(p, k, target);
    sum += term;
  }
  return sum;
}

/// Sum of (-1)^(k+1) (y-1)^k / k for v(y - 1) >= 1 (>= 2 for p = 2).
inline PadicNumber log_scalar(const PadicNumber& y) {
  u64 p = y.prime();
  int min_val = p == 2 ? 2 : 1;
  PadicNumber one = PadicNumber::from_integer(p, 1, max_precision(p));
  PadicNumber z = y - one;
  if (z.is_zero()) return PadicNumber::zero(p, z.absolute_precision());
  if (z.valuation() < min_val)
    throw DomainError("log_scalar: argument outside the convergence domain");
  int target = z.absolute_precision();
  PadicNumber sum = PadicNumber::zero(p);
  PadicNumber power = z;
  const int v = z.valuation();
  for (int k = 1;; ++k) {
    // j*v - log_p(j) is increasing for j >= 2 and bounds v((y-1)^j / j) from below
    if (k > 1 && k * v - std::log(double(k)) / std::log(double(p)) >= target) break;
    PadicNumber term = power / PadicNumber::from_integer(p, k, std::max(1, target));
    sum = (k % 2 == 1) ? sum + term : sum - term;
    power = power * z;
  }
  return sum;
}

}  // namespace padicdiff
