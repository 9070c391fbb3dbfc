#pragma once

// Exact arithmetic in Z[zeta_e], stored as integer coordinates in the power
// basis 1, z, ..., z^(phi(e)-1) modulo the cyclotomic polynomial Phi_e.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "padicdiff/errors.hpp"

namespace padicdiff {

using i64 = std::int64_t;

class CyclotomicField {
 public:
  explicit CyclotomicField(int e) : e_(e) {
    if (e < 1) throw DomainError("CyclotomicField: order must be >= 1");
    phi_poly_ = cyclotomic_polynomial(e);
    phi_ = static_cast<int>(phi_poly_.size()) - 1;
    // z^k reduced, for k = 0..e-1
    std::vector<i64> cur(phi_, 0);
    cur[0] = 1;
    if (phi_ == 0) throw IntegrityError("CyclotomicField: degenerate polynomial");
    for (int k = 0; k < e; ++k) {
      powers_.push_back(cur);
      // multiply by z: shift, then reduce the overflow coefficient
      i64 top = cur[phi_ - 1];
      for (int i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      for (int i = 0; i < phi_; ++i) cur[i] -= top * phi_poly_[i];
    }
  }

  int order() const { return e_; }
  int degree() const { return phi_; }
  const std::vector<i64>& zeta_power(int k) const { return powers_[((k % e_) + e_) % e_]; }

  /// Integer coefficients of Phi_e, lowest degree first.
  static std::vector<i64> cyclotomic_polynomial(int e) {
    // x^e - 1 divided by Phi_d for every proper divisor d
    std::vector<i64> num(e + 1, 0);
    num[0] = -1;
    num[e] = 1;
    for (int d = 1; d < e; ++d) {
      if (e % d) continue;
      auto den = cyclotomic_polynomial(d);
      std::vector<i64> q(num.size() - den.size() + 1, 0);
      for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        i64 c = num[i + den.size() - 1];
        q[i] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
      }
      num = q;
    }
    return num;
  }

  static std::shared_ptr<const CyclotomicField> make(int e) { return std::make_shared<const CyclotomicField>(e); }

 private:
  int e_;
  int phi_ = 0;
  std::vector<i64> phi_poly_;
  std::vector<std::vector<i64>> powers_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

class Cyclotomic {
 public:
  Cyclotomic() = default;
  explicit Cyclotomic(FieldPtr f) : f_(std::move(f)), c_(f_->degree(), 0) {}

  static Cyclotomic integer(FieldPtr f, i64 n) {
    Cyclotomic r(std::move(f));
    r.c_[0] = n;
    return r;
  }

  static Cyclotomic zeta(FieldPtr f, int k) {
    Cyclotomic r(f);
    r.c_ = f->zeta_power(k);
    return r;
  }

  const FieldPtr& field() const { return f_; }
  int order() const { return f_->order(); }
  const std::vector<i64>& coeffs() const { return c_; }

  bool is_zero() const {
    for (i64 x : c_)
      if (x) return false;
    return true;
  }

  bool is_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }

  i64 as_integer() const {
    if (!is_integer()) throw IntegrityError("Cyclotomic: value " + to_string() + " is not a rational integer");
    return c_[0];
  }

  Cyclotomic conj() const {
    Cyclotomic r(f_);
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
      if (c_[i]) r.add_scaled(f_->zeta_power(-i), c_[i]);
    return r;
  }

  /// Exact division by a rational integer.
  Cyclotomic divided_by(i64 n) const {
    if (n == 0) throw DomainError("Cyclotomic: division by zero");
    Cyclotomic r = *this;
    for (auto& x : r.c_) {
      if (x % n) throw IntegrityError("Cyclotomic: " + to_string() + " not divisible by " + std::to_string(n));
      x /= n;
    }
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.same(b);
    Cyclotomic r(a.f_);
    for (int i = 0; i < static_cast<int>(a.c_.size()); ++i) {
      if (!a.c_[i]) continue;
      for (int j = 0; j < static_cast<int>(b.c_.size()); ++j)
        if (b.c_[j]) r.add_scaled(a.f_->zeta_power(i + j), a.c_[i] * b.c_[j]);
    }
    return r;
  }

  friend Cyclotomic operator*(i64 s, Cyclotomic a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.order() == b.order() && a.c_ == b.c_; }

  /// e.g. "2", "-1-z", "z^2+3" with z = zeta_e.
  std::string to_string() const {
    std::string s;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
      i64 x = c_[i];
      if (!x) continue;
      std::string mag = std::to_string(x < 0 ? -x : x);
      if (s.empty()) {
        if (x < 0) s += "-";
      } else {
        s += x < 0 ? "-" : "+";
      }
      if (i == 0) {
        s += mag;
      } else {
        if (mag != "1") s += mag + "*";
        s += i == 1 ? "z" : "z^" + std::to_string(i);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  void same(const Cyclotomic& o) const {
    if (!f_ || !o.f_ || f_->order() != o.f_->order()) throw DomainError("Cyclotomic: mismatched fields");
  }
  void add_scaled(const std::vector<i64>& v, i64 s) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += s * v[i];
  }

  FieldPtr f_;
  std::vector<i64> c_;
};

}  // namespace padicdiff
