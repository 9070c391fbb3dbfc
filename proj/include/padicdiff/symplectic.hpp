#pragma once

// Polynomial maps, 1-forms and 2-forms on Q_p^n: potential and symplectic
// invariance checks, linear Sp membership and the kernel of the Lie
// derivative on polynomial vector fields.

#include <functional>
#include <map>
#include <vector>

#include "padicdiff/padic.hpp"

namespace padicdiff {

inline constexpr int kMaxPolyDegree = 8;
inline constexpr std::size_t kMaxKernelUnknowns = 4000;

using Exponent = std::vector<int>;

/// Sparse multivariate polynomial over Q_p; exact zeros are never stored.
class MPoly {
 public:
  MPoly() = default;
  MPoly(u64 p, int n) : p_(p), n_(n) {}

  static MPoly constant(u64 p, int n, const PadicNumber& c) {
    MPoly r(p, n);
    r.add_term(Exponent(n, 0), c);
    return r;
  }

  /// c x^i (0-based variable index).
  static MPoly variable(u64 p, int n, int i, const PadicNumber& c) {
    Exponent e(n, 0);
    e[i] = 1;
    MPoly r(p, n);
    r.add_term(e, c);
    return r;
  }

  u64 prime() const { return p_; }
  int vars() const { return n_; }
  const std::map<Exponent, PadicNumber>& terms() const { return t_; }

  void add_term(const Exponent& e, const PadicNumber& c) {
    if (c.is_exact_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_exact_zero()) t_.erase(it);
    }
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  /// Every coefficient vanishes to its precision.
  bool is_zero() const {
    for (const auto& [e, c] : t_)
      if (!c.is_zero()) return false;
    return true;
  }

  PadicNumber coeff(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? PadicNumber::zero(p_) : it->second;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a.p_ ? a : MPoly(b.p_, b.n_);
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }

  MPoly operator-() const {
    MPoly r(p_, n_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }

  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

  friend MPoly operator*(const PadicNumber& s, const MPoly& a) {
    MPoly r(a.p_, a.n_);
    if (s.is_exact_zero()) return r;
    for (const auto& [e, c] : a.t_) r.t_.emplace(e, s * c);
    return r;
  }

  /// Product; total degree above max_degree is a DomainError.
  static MPoly multiply(const MPoly& a, const MPoly& b, int max_degree = kMaxPolyDegree) {
    MPoly r(a.p_ ? a.p_ : b.p_, std::max(a.n_, b.n_));
    if (a.t_.empty() || b.t_.empty()) return r;
    if (a.degree() + b.degree() > max_degree)
      throw DomainError("MPoly: degree " + std::to_string(a.degree() + b.degree()) + " exceeds the cap " +
                        std::to_string(max_degree));
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Exponent e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) { return multiply(a, b); }

  MPoly derivative(int i) const {
    MPoly r(p_, n_);
    for (const auto& [e, c] : t_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      --f[i];
      r.add_term(f, PadicNumber::from_integer(p_, e[i], max_precision(p_)) * c);
    }
    return r;
  }

  PadicNumber evaluate(const std::vector<PadicNumber>& x) const {
    PadicNumber acc = PadicNumber::zero(p_);
    for (const auto& [e, c] : t_) {
      PadicNumber m = c;
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) m *= x[i];
      acc += m;
    }
    return acc;
  }

  /// this(g^1(x), ..., g^n(x)) with the degree cap.
  MPoly substitute(const std::vector<MPoly>& g, int max_degree = kMaxPolyDegree) const {
    MPoly r(p_, g.empty() ? n_ : g.front().vars());
    if (t_.empty()) return r;
    for (const auto& [e, c] : t_) {
      MPoly m = constant(p_, r.vars(), c);
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) m = multiply(m, g[i], max_degree);
      r = r + m;
    }
    return r;
  }

 private:
  u64 p_ = 0;
  int n_ = 0;
  std::map<Exponent, PadicNumber> t_;
};

using Matrix = std::vector<std::vector<PadicNumber>>;

struct PolyMap {
  u64 p = 0;
  int n = 0;
  std::vector<MPoly> g;

  static PolyMap identity(u64 p, int n) {
    PolyMap m{p, n, {}};
    for (int i = 0; i < n; ++i) m.g.push_back(MPoly::variable(p, n, i, PadicNumber::from_integer(p, 1, max_precision(p))));
    return m;
  }

  /// x -> M x.
  static PolyMap linear(const Matrix& M) {
    int n = static_cast<int>(M.size());
    u64 p = M[0][0].prime();
    PolyMap m{p, n, {}};
    for (int i = 0; i < n; ++i) {
      MPoly row(p, n);
      for (int j = 0; j < n; ++j) row = row + MPoly::variable(p, n, j, M[i][j]);
      m.g.push_back(row);
    }
    return m;
  }

  int degree() const {
    int d = 0;
    for (const auto& c : g) d = std::max(d, c.degree());
    return d;
  }

  /// d g^mu / d x^alpha as [mu][alpha].
  std::vector<std::vector<MPoly>> jacobian() const {
    std::vector<std::vector<MPoly>> J(n);
    for (int mu = 0; mu < n; ++mu)
      for (int a = 0; a < n; ++a) J[mu].push_back(g[mu].derivative(a));
    return J;
  }
};

/// this o other.
inline PolyMap compose(const PolyMap& f, const PolyMap& h, int max_degree = kMaxPolyDegree) {
  PolyMap r{f.p, h.n, {}};
  for (const auto& c : f.g) r.g.push_back(c.substitute(h.g, max_degree));
  return r;
}

struct OneForm {
  u64 p = 0;
  int n = 0;
  std::vector<MPoly> A;  ///< A_alpha
};

struct TwoForm {
  u64 p = 0;
  int n = 0;
  std::vector<std::vector<MPoly>> F;  ///< F_{alpha beta}, antisymmetric

  bool antisymmetric() const {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!(F[a][b] + F[b][a]).is_zero()) return false;
    return true;
  }
};

/// The chain form: eps_{a,a+1} = 1, eps_{a+1,a} = -1.
inline Matrix chain_epsilon(u64 p, int n) {
  Matrix e(n, std::vector<PadicNumber>(n, PadicNumber::zero(p)));
  for (int a = 0; a + 1 < n; ++a) {
    e[a][a + 1] = PadicNumber::from_integer(p, 1, max_precision(p));
    e[a + 1][a] = PadicNumber::from_integer(p, -1, max_precision(p));
  }
  return e;
}

/// Darboux blocks [[0, 1], [-1, 0]] on coordinate pairs.
inline Matrix darboux_epsilon(u64 p, int n) {
  if (n % 2) throw DomainError("darboux_epsilon: n must be even");
  Matrix e(n, std::vector<PadicNumber>(n, PadicNumber::zero(p)));
  for (int a = 0; a < n; a += 2) {
    e[a][a + 1] = PadicNumber::from_integer(p, 1, max_precision(p));
    e[a + 1][a] = PadicNumber::from_integer(p, -1, max_precision(p));
  }
  return e;
}

/// A = c_{alpha nu} x^nu dx^alpha.
inline OneForm linear_form(const Matrix& c) {
  int n = static_cast<int>(c.size());
  u64 p = c[0][0].prime();
  OneForm A{p, n, {}};
  for (int a = 0; a < n; ++a) {
    MPoly comp(p, n);
    for (int nu = 0; nu < n; ++nu) comp = comp + MPoly::variable(p, n, nu, c[a][nu]);
    A.A.push_back(comp);
  }
  return A;
}

/// Constant 2-form with matrix c.
inline TwoForm constant_form(const Matrix& c) {
  int n = static_cast<int>(c.size());
  u64 p = c[0][0].prime();
  TwoForm F{p, n, std::vector<std::vector<MPoly>>(n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) F.F[a].push_back(MPoly::constant(p, n, c[a][b]));
  return F;
}

/// F_{alpha beta} = d_alpha A_beta - d_beta A_alpha.
inline TwoForm exterior_derivative(const OneForm& A) {
  TwoForm F{A.p, A.n, std::vector<std::vector<MPoly>>(A.n)};
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b) F.F[a].push_back(A.A[b].derivative(a) - A.A[a].derivative(b));
  return F;
}

/// Determinant by elimination with largest-norm pivots.
inline PadicNumber determinant(Matrix m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw DomainError("determinant: empty matrix");
  u64 p = m[0][0].prime();
  PadicNumber det = PadicNumber::from_integer(p, 1, max_precision(p));
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m[r][c].is_zero() && (piv < 0 || m[r][c].valuation() < m[piv][c].valuation())) piv = r;
    if (piv < 0) {
      int abs = kInfinity;
      for (int r = c; r < n; ++r) abs = std::min(abs, m[r][c].absolute_precision());
      return PadicNumber::zero(p, abs);
    }
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c].is_exact_zero()) continue;
      PadicNumber f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

struct NondegeneracyReport {
  bool nondegenerate = false;
  int max_det_valuation = 0;  ///< largest v(det F) over the sample points
  bool odd_dimension = false;
};

/// det(F(x)) != 0 at every sample point.
inline NondegeneracyReport is_nondegenerate(const TwoForm& F, const std::vector<std::vector<PadicNumber>>& points) {
  NondegeneracyReport r;
  r.odd_dimension = F.n % 2 == 1;
  r.nondegenerate = !points.empty();
  for (const auto& x : points) {
    Matrix m(F.n);
    for (int a = 0; a < F.n; ++a)
      for (int b = 0; b < F.n; ++b) m[a].push_back(F.F[a][b].evaluate(x));
    PadicNumber d = determinant(m);
    if (d.is_zero()) {
      r.nondegenerate = false;
      r.max_det_valuation = kInfinity;
      return r;
    }
    r.max_det_valuation = std::max(r.max_det_valuation, d.valuation());
  }
  return r;
}

/// Sample points: the integer grid {0..k-1}^n.
inline std::vector<std::vector<PadicNumber>> grid_points(u64 p, int n, int k) {
  std::vector<std::vector<PadicNumber>> pts;
  std::vector<int> idx(n, 0);
  while (true) {
    std::vector<PadicNumber> x;
    for (int i : idx) x.push_back(PadicNumber::from_integer(p, i, max_precision(p)));
    pts.push_back(x);
    int i = 0;
    while (i < n && ++idx[i] == k) idx[i++] = 0;
    if (i == n) break;
  }
  return pts;
}

/// A_alpha(x) = A_mu(g(x)) d g^mu / d x^alpha, coefficient-wise.
inline bool check_potential(const PolyMap& g, const OneForm& A, int max_degree = kMaxPolyDegree) {
  if (g.n != A.n) throw DomainError("check_potential: dimension mismatch");
  auto J = g.jacobian();
  for (int a = 0; a < A.n; ++a) {
    MPoly rhs(A.p, A.n);
    for (int mu = 0; mu < A.n; ++mu) rhs = rhs + MPoly::multiply(A.A[mu].substitute(g.g, max_degree), J[mu][a], max_degree);
    if (!(A.A[a] - rhs).is_zero()) return false;
  }
  return true;
}

/// F_{alpha beta}(x) = F_{mu nu}(g(x)) dg^mu/dx^alpha dg^nu/dx^beta.
inline bool check_symplectic(const PolyMap& g, const TwoForm& F, int max_degree = kMaxPolyDegree) {
  if (g.n != F.n) throw DomainError("check_symplectic: dimension mismatch");
  auto J = g.jacobian();
  std::vector<std::vector<MPoly>> Fg(F.n);
  for (int mu = 0; mu < F.n; ++mu)
    for (int nu = 0; nu < F.n; ++nu) Fg[mu].push_back(F.F[mu][nu].substitute(g.g, max_degree));
  for (int a = 0; a < F.n; ++a)
    for (int b = 0; b < F.n; ++b) {
      MPoly rhs(F.p, F.n);
      for (int mu = 0; mu < F.n; ++mu)
        for (int nu = 0; nu < F.n; ++nu) {
          if (Fg[mu][nu].terms().empty()) continue;
          rhs = rhs + MPoly::multiply(MPoly::multiply(Fg[mu][nu], J[mu][a], max_degree), J[nu][b], max_degree);
        }
      if (!(F.F[a][b] - rhs).is_zero()) return false;
    }
  return true;
}

/// Matrix of a linear map; DomainError when g has constant or nonlinear terms.
inline Matrix linear_part(const PolyMap& g) {
  Matrix M(g.n, std::vector<PadicNumber>(g.n, PadicNumber::zero(g.p)));
  for (int i = 0; i < g.n; ++i)
    for (const auto& [e, c] : g.g[i].terms()) {
      int deg = 0, var = -1;
      for (int k = 0; k < g.n; ++k) {
        deg += e[k];
        if (e[k]) var = k;
      }
      if (deg != 1) {
        if (c.is_zero()) continue;
        throw DomainError("sp_membership: map is not linear");
      }
      M[i][var] = c;
    }
  return M;
}

/// g^t eps g = eps for the linear map g.
inline bool sp_membership(const PolyMap& g, const Matrix& eps) {
  Matrix M = linear_part(g);
  const int n = g.n;
  if (n % 2) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      PadicNumber s = PadicNumber::zero(g.p);
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) s += M[mu][a] * eps[mu][nu] * M[nu][b];
      if (!(s - eps[a][b]).is_zero()) return false;
    }
  return true;
}

inline bool sp_membership(const PolyMap& g) { return sp_membership(g, chain_epsilon(g.p, g.n)); }

/// Polynomial vector field xi^mu d_mu.
using PolyField = std::vector<MPoly>;

/// (L_xi A)_alpha = xi^mu d_mu A_alpha + A_mu d_alpha xi^mu.
inline std::vector<MPoly> lie_derivative(const PolyField& xi, const OneForm& A, int max_degree = 2 * kMaxPolyDegree) {
  std::vector<MPoly> out;
  for (int a = 0; a < A.n; ++a) {
    MPoly s(A.p, A.n);
    for (int mu = 0; mu < A.n; ++mu) {
      s = s + MPoly::multiply(xi[mu], A.A[a].derivative(mu), max_degree);
      s = s + MPoly::multiply(A.A[mu], xi[mu].derivative(a), max_degree);
    }
    out.push_back(s);
  }
  return out;
}

/// Exponent vectors of total degree <= D in n variables, in a fixed order.
inline std::vector<Exponent> monomials_upto(int n, int D) {
  std::vector<Exponent> out;
  Exponent e(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, D);
  return out;
}

struct KernelResult {
  int dimension = 0;
  std::vector<PolyField> basis;
  int unknowns = 0;
  int rank = 0;
};

/// Kernel of xi -> L_xi A on polynomial fields of degree <= D, by elimination
/// with largest-norm pivots over the coefficient system.
inline KernelResult lie_derivative_kernel(const OneForm& A, int D) {
  if (D < 0) throw DomainError("lie_derivative_kernel: negative degree");
  const u64 p = A.p;
  const int n = A.n;
  auto monos = monomials_upto(n, D);
  const std::size_t cols = monos.size() * n;
  if (cols > kMaxKernelUnknowns) throw DomainError("lie_derivative_kernel: system too large");
  // one column per unknown (mu, monomial)
  std::map<std::pair<int, Exponent>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, PadicNumber>>> columns(cols);
  const PadicNumber one = PadicNumber::from_integer(p, 1, max_precision(p));
  for (int mu = 0; mu < n; ++mu)
    for (std::size_t k = 0; k < monos.size(); ++k) {
      PolyField xi(n, MPoly(p, n));
      MPoly m(p, n);
      m.add_term(monos[k], one);
      xi[mu] = m;
      auto L = lie_derivative(xi, A);
      for (int a = 0; a < n; ++a)
        for (const auto& [e, c] : L[a].terms()) {
          if (c.is_zero()) continue;
          auto key = std::make_pair(a, e);
          auto it = row_of.find(key);
          if (it == row_of.end()) it = row_of.emplace(key, row_of.size()).first;
          columns[mu * monos.size() + k].push_back({it->second, c});
        }
    }
  const std::size_t rows = row_of.size();
  Matrix M(rows, std::vector<PadicNumber>(cols, PadicNumber::zero(p)));
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [r, v] : columns[c]) M[r][c] = v;
  // reduced row echelon form; pivot = largest norm in the remaining column
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!M[i][c].is_zero() && (piv == rows || M[i][c].valuation() < M[piv][c].valuation())) piv = i;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    PadicNumber inv = one / M[r][c];
    for (std::size_t k = c; k < cols; ++k) M[r][k] = M[r][k] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      PadicNumber f = M[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!M[r][k].is_exact_zero()) M[i][k] -= f * M[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  KernelResult out;
  out.unknowns = static_cast<int>(cols);
  out.rank = static_cast<int>(r);
  out.dimension = out.unknowns - out.rank;
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<PadicNumber> v(cols, PadicNumber::zero(p));
    v[f] = one;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -M[i][f];
    PolyField xi(n, MPoly(p, n));
    for (std::size_t c = 0; c < cols; ++c)
      if (!v[c].is_zero()) xi[c / monos.size()].add_term(monos[c % monos.size()], v[c]);
    out.basis.push_back(std::move(xi));
  }
  return out;
}

}  // namespace padicdiff
