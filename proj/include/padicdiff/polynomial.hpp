#pragma once

// Univariate polynomials over Q_p in the monomial basis. Products and
// compositions accept a degree cap; coefficients above the cap are dropped
// and the largest dropped norm is reported through a TruncationLog so callers
// can fold it into their precision budget.

#include <algorithm>
#include <vector>

#include "padicdiff/padic.hpp"

namespace padicdiff {

/// Largest norm among coefficients discarded by degree truncation.
struct TruncationLog {
  Val dropped = Val::infinity();
  void record(const PadicNumber& c) {
    if (c.is_zero()) {
      if (c.absolute_precision() != kInfinity) dropped = max_norm(dropped, Val(c.absolute_precision()));
      return;
    }
    dropped = max_norm(dropped, c.norm());
  }
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(u64 p) : p_(p) {}
  Polynomial(u64 p, std::vector<PadicNumber> coeffs) : p_(p), c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const PadicNumber& c, int degree) {
    std::vector<PadicNumber> v(degree + 1, PadicNumber::zero(c.prime()));
    v[degree] = c;
    return Polynomial(c.prime(), std::move(v));
  }

  static Polynomial identity(u64 p) {
    return monomial(PadicNumber::from_integer(p, 1, max_precision(p)), 1);
  }

  u64 prime() const { return p_; }
  /// Degree of the highest stored coefficient that is not an exact zero; -1 for 0.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<PadicNumber>& coeffs() const { return c_; }

  PadicNumber coeff(int k) const {
    if (k < 0 || k > degree()) return PadicNumber::zero(p_);
    return c_[k];
  }

  void set_coeff(int k, const PadicNumber& v) {
    if (k > degree()) c_.resize(k + 1, PadicNumber::zero(p_));
    c_[k] = v;
    trim();
  }

  /// Gauss norm: max |b_k|. Inexact zeros count as zero.
  Val gauss_norm() const {
    Val n = Val::infinity();
    for (const auto& c : c_) n = max_norm(n, c.norm());
    return n;
  }

  /// Smallest absolute precision among the coefficients.
  int absolute_precision() const {
    int a = kInfinity;
    for (const auto& c : c_) a = std::min(a, c.absolute_precision());
    return a;
  }

  Polynomial with_absolute_cap(int cap) const {
    std::vector<PadicNumber> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(c.with_absolute_cap(cap));
    return Polynomial(p_, std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    u64 p = a.p_ ? a.p_ : b.p_;
    std::vector<PadicNumber> v(std::max(a.c_.size(), b.c_.size()), PadicNumber::zero(p));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(p, std::move(v));
  }

  Polynomial operator-() const {
    std::vector<PadicNumber> v;
    for (const auto& c : c_) v.push_back(-c);
    return Polynomial(p_, std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const PadicNumber& s, const Polynomial& a) {
    std::vector<PadicNumber> v;
    for (const auto& c : a.c_) v.push_back(s * c);
    return Polynomial(s.prime(), std::move(v));
  }

  /// Product truncated at max_degree (negative: no truncation).
  static Polynomial multiply(const Polynomial& a, const Polynomial& b, int max_degree = -1,
                             TruncationLog* log = nullptr) {
    u64 p = a.p_ ? a.p_ : b.p_;
    if (a.c_.empty() || b.c_.empty()) return Polynomial(p);
    int full = a.degree() + b.degree();
    int keep = max_degree < 0 ? full : std::min(full, max_degree);
    std::vector<PadicNumber> v(full + 1, PadicNumber::zero(p));
    for (int i = 0; i <= a.degree(); ++i) {
      if (a.c_[i].is_exact_zero()) continue;
      for (int j = 0; j <= b.degree(); ++j) {
        if (b.c_[j].is_exact_zero()) continue;
        v[i + j] += a.c_[i] * b.c_[j];
      }
    }
    if (log)
      for (int k = keep + 1; k <= full; ++k) log->record(v[k]);
    v.resize(keep + 1, PadicNumber::zero(p));
    return Polynomial(p, std::move(v));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial(p_);
    std::vector<PadicNumber> v;
    for (int k = 1; k <= degree(); ++k)
      v.push_back(c_[k] * PadicNumber::from_integer(p_, k, max_precision(p_)));
    return Polynomial(p_, std::move(v));
  }

  PadicNumber evaluate(const PadicNumber& x) const {
    PadicNumber acc = PadicNumber::zero(x.prime());
    for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
    return acc;
  }

  /// this(g(x)), truncated at max_degree.
  Polynomial compose(const Polynomial& g, int max_degree = -1, TruncationLog* log = nullptr) const {
    Polynomial acc(p_);
    for (int k = degree(); k >= 0; --k) {
      acc = multiply(acc, g, max_degree, log);
      Polynomial ck(p_, {c_[k]});
      acc = acc + ck;
    }
    return acc;
  }

  /// Drops coefficients above max_degree, logging them.
  Polynomial truncated(int max_degree, TruncationLog* log = nullptr) const {
    if (degree() <= max_degree) return *this;
    if (log)
      for (int k = max_degree + 1; k <= degree(); ++k) log->record(c_[k]);
    std::vector<PadicNumber> v(c_.begin(), c_.begin() + (max_degree + 1));
    return Polynomial(p_, std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
  }

  u64 p_ = 0;
  std::vector<PadicNumber> c_;
};

}  // namespace padicdiff
