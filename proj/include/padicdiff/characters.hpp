#pragma once

// Character tables by the class-sum eigenvector method in exact modular
// arithmetic, lifted to cyclotomic integers; regular decomposition,
// induction, and the Mackey restriction and tensor-product identities as
// exact character equalities.

#include <algorithm>
#include <vector>

#include "padicdiff/cyclotomic.hpp"
#include "padicdiff/finite_group.hpp"

namespace padicdiff {

/// Values of a class function at every element of the ambient group; a
/// character of a subgroup H is zero off H.
using ElementFunction = std::vector<Cyclotomic>;

struct CharacterTable {
  FieldPtr field;
  ClassData classes;
  std::vector<std::vector<Cyclotomic>> chars;  ///< [irreducible][class]
  std::vector<int> degrees;
  u64 modulus = 0;  ///< the prime used for the eigenvector computation

  std::size_t size() const { return chars.size(); }

  ElementFunction on_elements(std::size_t i) const {
    ElementFunction f;
    for (int c : classes.class_of) f.push_back(chars[i][c]);
    return f;
  }
};

namespace detail {

inline u64 powmod(u64 a, u64 k, u64 q) {
  u64 r = 1 % q;
  a %= q;
  for (; k; k >>= 1, a = mulmod(a, a, q))
    if (k & 1) r = mulmod(r, a, q);
  return r;
}

/// Primitive e-th root of unity mod the prime q, q = 1 mod e.
inline u64 root_of_unity(u64 e, u64 q) {
  std::vector<u64> factors;
  u64 m = q - 1;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) factors.push_back(m);
  for (u64 g = 2; g < q; ++g) {
    bool gen = true;
    for (u64 f : factors)
      if (powmod(g, (q - 1) / f, q) == 1) {
        gen = false;
        break;
      }
    if (gen) return powmod(g, (q - 1) / e, q);
  }
  throw IntegrityError("root_of_unity: no generator");
}

/// Basis (as columns) of {c : X c = 0} for a k x m matrix mod q.
inline std::vector<std::vector<u64>> nullspace_mod(std::vector<std::vector<u64>> X, u64 q) {
  const std::size_t rows = X.size(), cols = rows ? X[0].size() : 0;
  std::vector<int> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && X[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(X[piv], X[r]);
    u64 inv = invmod(X[r][c], q);
    for (auto& x : X[r]) x = mulmod(x, inv, q);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || X[i][c] == 0) continue;
      u64 f = X[i][c];
      for (std::size_t k = 0; k < cols; ++k) X[i][k] = (X[i][k] + q - mulmod(f, X[r][k], q)) % q;
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<char> is_piv(cols, 0);
  for (int c : pivots) is_piv[c] = 1;
  std::vector<std::vector<u64>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (q - X[i][f]) % q;
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Complete table of irreducible characters. Values lie in Z[zeta_e] for
/// e = cyclotomic_order (default: the exponent of G; any multiple works).
inline CharacterTable character_table(const FiniteGroup& G, int cyclotomic_order = 0, int cap = kMaxGroupOrder) {
  const int n = G.order();
  if (n > cap) throw DomainError("character_table: |G| = " + std::to_string(n) + " exceeds the cap");
  const int e = cyclotomic_order ? cyclotomic_order : G.exponent();
  if (e % G.exponent()) throw DomainError("character_table: cyclotomic order must be a multiple of exp(G)");
  CharacterTable T;
  T.field = CyclotomicField::make(e);
  T.classes = conjugacy_classes(G);
  const auto& C = T.classes;
  const int k = static_cast<int>(C.count());

  u64 q = static_cast<u64>(e) * ((2 * static_cast<u64>(n)) / e + 1) + 1;
  while (!is_prime(q)) q += e;
  T.modulus = q;
  const u64 z = detail::root_of_unity(e, q);

  // a[r][s][t] = #{x in C_r : x^-1 z_t in C_s}
  std::vector<std::vector<std::vector<u64>>> M(k, std::vector<std::vector<u64>>(k, std::vector<u64>(k, 0)));
  for (int t = 0; t < k; ++t) {
    int zt = C.representatives[t];
    for (int x = 0; x < n; ++x) ++M[C.class_of[x]][C.class_of[G.mul(G.inv(x), zt)]][t];
  }
  // split F_q^k into common eigenspaces of all class-sum matrices
  std::vector<std::vector<std::vector<u64>>> spaces(1);
  for (int i = 0; i < k; ++i) {
    std::vector<u64> v(k, 0);
    v[i] = 1;
    spaces[0].push_back(v);
  }
  for (int r = 1; r < k; ++r) {
    bool done = std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; });
    if (done) break;
    std::vector<std::vector<std::vector<u64>>> next;
    for (auto& V : spaces) {
      if (V.size() == 1) {
        next.push_back(V);
        continue;
      }
      const std::size_t m = V.size();
      // W = M_r V, columns w_j
      std::vector<std::vector<u64>> W(m, std::vector<u64>(k, 0));
      for (std::size_t j = 0; j < m; ++j)
        for (int s = 0; s < k; ++s) {
          u64 acc = 0;
          for (int t = 0; t < k; ++t) acc = (acc + detail::mulmod(M[r][s][t], V[j][t], q)) % q;
          W[j][s] = acc;
        }
      std::size_t found = 0;
      for (u64 lambda = 0; lambda < q && found < m; ++lambda) {
        std::vector<std::vector<u64>> X(k, std::vector<u64>(m));
        for (int s = 0; s < k; ++s)
          for (std::size_t j = 0; j < m; ++j) X[s][j] = (W[j][s] + q - detail::mulmod(lambda, V[j][s], q)) % q;
        auto ns = detail::nullspace_mod(X, q);
        if (ns.empty()) continue;
        std::vector<std::vector<u64>> sub;
        for (const auto& c : ns) {
          std::vector<u64> v(k, 0);
          for (std::size_t j = 0; j < m; ++j)
            for (int s = 0; s < k; ++s) v[s] = (v[s] + detail::mulmod(c[j], V[j][s], q)) % q;
          sub.push_back(v);
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      if (found != m) throw IntegrityError("character_table: class-sum matrices do not split");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != k) throw IntegrityError("character_table: eigenspaces did not separate");

  // class of g^j for each class representative
  std::vector<std::vector<int>> power_class(k, std::vector<int>(e));
  for (int r = 0; r < k; ++r) {
    int x = G.identity();
    for (int j = 0; j < e; ++j) {
      power_class[r][j] = C.class_of[x];
      x = G.mul(x, C.representatives[r]);
    }
  }
  std::vector<int> inverse_class(k);
  for (int r = 0; r < k; ++r) inverse_class[r] = C.class_of[G.inv(C.representatives[r])];

  struct Row {
    int degree;
    bool trivial;
    std::vector<Cyclotomic> values;
  };
  std::vector<Row> rows;
  const u64 inv_e = detail::invmod(e % q, q);
  for (const auto& V : spaces) {
    auto w = V[0];
    if (w[0] == 0) throw IntegrityError("character_table: eigenvector vanishes at the identity class");
    u64 s0 = detail::invmod(w[0], q);
    for (auto& x : w) x = detail::mulmod(x, s0, q);
    u64 S = 0;
    for (int r = 0; r < k; ++r)
      S = (S + detail::mulmod(detail::mulmod(w[r], w[inverse_class[r]], q), detail::invmod(C.sizes[r], q), q)) % q;
    if (S == 0) throw IntegrityError("character_table: degenerate norm");
    u64 d2 = detail::mulmod(n % q, detail::invmod(S, q), q);
    int d = 0;
    for (int c = 1; c * c <= n; ++c)
      if (static_cast<u64>(c * c) % q == d2) d = c;
    if (!d) throw IntegrityError("character_table: degree not recovered");
    std::vector<u64> chi(k);
    for (int r = 0; r < k; ++r) chi[r] = detail::mulmod(detail::mulmod(d, w[r], q), detail::invmod(C.sizes[r], q), q);
    Row row{d, true, {}};
    for (int r = 0; r < k; ++r) {
      // multiplicity of zeta^t as an eigenvalue of the representative
      Cyclotomic val(T.field);
      for (int t = 0; t < e; ++t) {
        u64 acc = 0;
        for (int j = 0; j < e; ++j)
          acc = (acc + detail::mulmod(chi[power_class[r][j]], detail::powmod(z, static_cast<u64>(e - (static_cast<i64>(j) * t) % e) % e, q), q)) % q;
        u64 mult = detail::mulmod(acc, inv_e, q);
        if (mult > static_cast<u64>(d)) throw IntegrityError("character_table: eigenvalue multiplicity out of range");
        if (mult) val += static_cast<i64>(mult) * Cyclotomic::zeta(T.field, t);
      }
      if (!(val == Cyclotomic::integer(T.field, 1))) row.trivial = false;
      row.values.push_back(std::move(val));
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.trivial != b.trivial) return a.trivial;
    if (a.degree != b.degree) return a.degree < b.degree;
    for (std::size_t i = 0; i < a.values.size(); ++i)
      if (a.values[i].coeffs() != b.values[i].coeffs()) return a.values[i].coeffs() < b.values[i].coeffs();
    return false;
  });
  for (auto& r : rows) {
    T.degrees.push_back(r.degree);
    T.chars.push_back(std::move(r.values));
  }
  return T;
}

/// (1/|H|) sum over h in H of f(h) conj(g(h)); IntegrityError unless the
/// result is a rational integer (always so for characters).
inline i64 inner_product(const Subgroup& H, const ElementFunction& f, const ElementFunction& g) {
  if (H.empty()) throw DomainError("inner_product: empty subgroup");
  Cyclotomic acc(f.at(H[0]).field());
  for (int h : H) acc += f[h] * g[h].conj();
  return acc.divided_by(static_cast<i64>(H.size())).as_integer();
}

/// <chi_i, chi_j> over G for the class-indexed rows.
inline i64 class_inner_product(const CharacterTable& T, const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
  Cyclotomic acc(T.field);
  int n = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    acc += static_cast<i64>(T.classes.sizes[r]) * (a[r] * b[r].conj());
    n += T.classes.sizes[r];
  }
  return acc.divided_by(n).as_integer();
}

/// Every pair of rows orthonormal, and sum d^2 = |G|.
inline bool check_orthogonality(const CharacterTable& T) {
  i64 sum = 0, n = 0;
  for (int s : T.classes.sizes) n += s;
  for (std::size_t i = 0; i < T.size(); ++i) {
    sum += static_cast<i64>(T.degrees[i]) * T.degrees[i];
    for (std::size_t j = 0; j < T.size(); ++j)
      if (class_inner_product(T, T.chars[i], T.chars[j]) != (i == j ? 1 : 0)) return false;
  }
  return sum == n && T.size() == T.classes.count();
}

inline ElementFunction trivial_character(const FiniteGroup& G, const Subgroup& H, const FieldPtr& F) {
  ElementFunction f(G.order(), Cyclotomic(F));
  for (int h : H) f[h] = Cyclotomic::integer(F, 1);
  return f;
}

inline ElementFunction regular_character(const FiniteGroup& G, const FieldPtr& F) {
  ElementFunction f(G.order(), Cyclotomic(F));
  f[G.identity()] = Cyclotomic::integer(F, G.order());
  return f;
}

/// Multiplicity of each irreducible in the regular character.
inline std::vector<i64> decompose_regular(const FiniteGroup& G, const CharacterTable& T) {
  auto reg = regular_character(G, T.field);
  auto all = whole_group(G);
  std::vector<i64> m;
  for (std::size_t i = 0; i < T.size(); ++i) m.push_back(inner_product(all, reg, T.on_elements(i)));
  return m;
}

/// Irreducible characters of H, as element functions on G with values in
/// the field F (whose order must be a multiple of exp(H)).
inline std::vector<ElementFunction> subgroup_characters(const FiniteGroup& G, const Subgroup& H, const FieldPtr& F) {
  auto Hg = as_group(G, H);
  auto T = character_table(Hg, F->order());
  std::vector<ElementFunction> out;
  for (std::size_t i = 0; i < T.size(); ++i) {
    ElementFunction f(G.order(), Cyclotomic(F));
    for (std::size_t j = 0; j < H.size(); ++j) f[H[j]] = Cyclotomic(F) + T.chars[i][T.classes.class_of[j]];
    out.push_back(std::move(f));
  }
  return out;
}

/// Values on H only, zero elsewhere.
inline ElementFunction restrict_to(const Subgroup& H, const ElementFunction& f) {
  ElementFunction r(f.size(), Cyclotomic(f.front().field()));
  for (int h : H) r[h] = f[h];
  return r;
}

/// Induction from H to the subgroup S of G (S = G for ordinary induction):
/// (Ind f)(s) = (1/|H|) sum over y in S with y^-1 s y in H of f(y^-1 s y).
inline ElementFunction induce(const FiniteGroup& G, const Subgroup& H, const ElementFunction& f, const Subgroup& S) {
  verify_subgroup(G, H);
  verify_subgroup(G, S);
  std::vector<char> inH(G.order(), 0), inS(G.order(), 0);
  for (int h : H) inH[h] = 1;
  for (int s : S) inS[s] = 1;
  for (int h : H)
    if (!inS[h]) throw DomainError("induce: H is not contained in the target subgroup");
  const FieldPtr& F = f.front().field();
  ElementFunction out(G.order(), Cyclotomic(F));
  for (int s : S) {
    Cyclotomic acc(F);
    for (int y : S) {
      int c = G.conj(G.inv(y), s);
      if (inH[c]) acc += f[c];
    }
    out[s] = acc.divided_by(static_cast<i64>(H.size()));
  }
  return out;
}

inline ElementFunction induce(const FiniteGroup& G, const Subgroup& H, const ElementFunction& f) {
  return induce(G, H, f, whole_group(G));
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

/// g^-1 K g.
inline Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& K, int g) {
  Subgroup r;
  for (int k : K) r.push_back(G.conj(G.inv(g), k));
  std::sort(r.begin(), r.end());
  return r;
}

/// x -> f(g x g^-1), a function on g^-1 K g.
inline ElementFunction conjugate_function(const FiniteGroup& G, const Subgroup& K, const ElementFunction& f, int g) {
  ElementFunction r(G.order(), Cyclotomic(f.front().field()));
  for (int x : conjugate_subgroup(G, K, g)) r[x] = f[G.conj(g, x)];
  return r;
}

inline ElementFunction pointwise_product(const ElementFunction& a, const ElementFunction& b) {
  ElementFunction r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] * b[i]);
  return r;
}

struct MackeyTerm {
  int representative = 0;
  int coset_size = 0;
  Subgroup intersection;
  ElementFunction constituent;
};

struct MackeyCertificate {
  bool holds = false;
  ElementFunction lhs;
  ElementFunction rhs;
  std::vector<MackeyTerm> terms;
};

/// Res_N Ind_K^G chi = sum over K g N of Ind_{N cap g^-1 K g}^N (chi o conj_g).
inline MackeyCertificate mackey_restriction_check(const FiniteGroup& G, const Subgroup& K, const Subgroup& N,
                                                  const ElementFunction& chi) {
  MackeyCertificate cert;
  cert.lhs = restrict_to(N, induce(G, K, chi));
  cert.rhs = ElementFunction(G.order(), Cyclotomic(chi.front().field()));
  for (const auto& dc : double_cosets(G, K, N)) {
    int g = dc.representative;
    Subgroup L = intersect(N, conjugate_subgroup(G, K, g));
    auto part = induce(G, L, restrict_to(L, conjugate_function(G, K, chi, g)), N);
    for (int x : N) cert.rhs[x] += part[x];
    cert.terms.push_back({g, static_cast<int>(dc.elements.size()), L, std::move(part)});
  }
  cert.holds = true;
  for (int x = 0; x < G.order(); ++x)
    if (!(cert.lhs[x] == cert.rhs[x])) cert.holds = false;
  return cert;
}

/// Ind_K^G chi . Ind_N^G psi = sum over K g N of
/// Ind_{g^-1 K g cap N}^G ((chi o conj_g) . Res psi).
inline MackeyCertificate tensor_product_check(const FiniteGroup& G, const Subgroup& K, const Subgroup& N,
                                              const ElementFunction& chi, const ElementFunction& psi) {
  MackeyCertificate cert;
  cert.lhs = pointwise_product(induce(G, K, chi), induce(G, N, psi));
  cert.rhs = ElementFunction(G.order(), Cyclotomic(chi.front().field()));
  for (const auto& dc : double_cosets(G, K, N)) {
    int g = dc.representative;
    Subgroup L = intersect(conjugate_subgroup(G, K, g), N);
    auto f = pointwise_product(restrict_to(L, conjugate_function(G, K, chi, g)), restrict_to(L, psi));
    auto part = induce(G, L, f);
    for (int x = 0; x < G.order(); ++x) cert.rhs[x] += part[x];
    cert.terms.push_back({g, static_cast<int>(dc.elements.size()), L, std::move(part)});
  }
  cert.holds = true;
  for (int x = 0; x < G.order(); ++x)
    if (!(cert.lhs[x] == cert.rhs[x])) cert.holds = false;
  return cert;
}

}  // namespace padicdiff
