#pragma once

// Finite groups by multiplication table, built from permutation generators
// (including the permutation groups of the profinite tower), with subgroups,
// conjugacy classes and double cosets.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "padicdiff/profinite.hpp"

namespace padicdiff {

inline constexpr int kMaxGroupOrder = 2000;

using Perm = std::vector<int>;

class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Closure of permutations of {0..d-1}; element 0 is the identity and the
  /// rest follow in breadth-first order, so the numbering is deterministic.
  static FiniteGroup from_permutations(const std::vector<Perm>& gens, int cap = kMaxGroupOrder) {
    if (gens.empty()) throw DomainError("FiniteGroup: no generators");
    const std::size_t d = gens.front().size();
    for (const auto& g : gens) {
      if (g.size() != d) throw DomainError("FiniteGroup: generators act on different sets");
      std::vector<char> hit(d, 0);
      for (int x : g) {
        if (x < 0 || static_cast<std::size_t>(x) >= d || hit[x]) throw DomainError("FiniteGroup: generator is not a permutation");
        hit[x] = 1;
      }
    }
    Perm id(d);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> elems{id};
    std::map<Perm, int> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (const auto& g : gens) {
        Perm h(d);
        for (std::size_t x = 0; x < d; ++x) h[x] = g[elems[i][x]];
        if (index.emplace(h, static_cast<int>(elems.size())).second) {
          elems.push_back(h);
          if (static_cast<int>(elems.size()) > cap)
            throw DomainError("FiniteGroup: order exceeds the cap " + std::to_string(cap));
        }
      }
    FiniteGroup G;
    G.n_ = static_cast<int>(elems.size());
    G.mul_.assign(static_cast<std::size_t>(G.n_) * G.n_, 0);
    // (a * b)(x) = a(b(x))
    for (int a = 0; a < G.n_; ++a)
      for (int b = 0; b < G.n_; ++b) {
        Perm h(d);
        for (std::size_t x = 0; x < d; ++x) h[x] = elems[a][elems[b][x]];
        G.mul_[a * G.n_ + b] = index.at(h);
      }
    G.perms_ = std::move(elems);
    G.finish();
    return G;
  }

  /// The permutation group on Z/p^l generated by finite tower maps.
  static FiniteGroup from_finite_maps(const std::vector<FiniteMap>& gens, int cap = kMaxGroupOrder) {
    std::vector<Perm> perms;
    for (const auto& f : gens) {
      if (!f.is_permutation()) throw DomainError("FiniteGroup: map is not a permutation");
      perms.emplace_back(f.table.begin(), f.table.end());
    }
    return from_permutations(perms, cap);
  }

  /// From a raw multiplication table; validated exhaustively.
  static FiniteGroup from_table(int n, std::vector<int> mul) {
    if (n < 1 || mul.size() != static_cast<std::size_t>(n) * n) throw IntegrityError("FiniteGroup: bad table size");
    FiniteGroup G;
    G.n_ = n;
    G.mul_ = std::move(mul);
    for (int x : G.mul_)
      if (x < 0 || x >= n) throw IntegrityError("FiniteGroup: table entry out of range");
    G.finish();
    return G;
  }

  int order() const { return n_; }
  int identity() const { return e_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  ///< g x g^-1
  const std::vector<int>& table() const { return mul_; }
  const std::vector<Perm>& permutations() const { return perms_; }

  int element_order(int g) const {
    int k = 1;
    for (int x = g; x != e_; x = mul(x, g)) ++k;
    return k;
  }

  int exponent() const {
    int e = 1;
    for (int g = 0; g < n_; ++g) e = std::lcm(e, element_order(g));
    return e;
  }

  bool is_abelian() const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < a; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  void finish() {
    e_ = -1;
    for (int a = 0; a < n_ && e_ < 0; ++a) {
      bool ok = true;
      for (int b = 0; b < n_ && ok; ++b) ok = mul(a, b) == b && mul(b, a) == b;
      if (ok) e_ = a;
    }
    if (e_ < 0) throw IntegrityError("FiniteGroup: no identity");
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == e_) {
          if (mul(b, a) != e_) throw IntegrityError("FiniteGroup: one-sided inverse");
          inv_[a] = b;
          break;
        }
    for (int a = 0; a < n_; ++a)
      if (inv_[a] < 0) throw IntegrityError("FiniteGroup: missing inverse");
    if (n_ <= 200) {
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          for (int c = 0; c < n_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw IntegrityError("FiniteGroup: not associative");
    }
  }

  int n_ = 0;
  int e_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<Perm> perms_;
};

namespace groups {

inline Perm cycle_perm(int d, std::initializer_list<int> cyc) {
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> c(cyc);
  for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  return p;
}

inline FiniteGroup cyclic(int n) {
  if (n < 1) throw DomainError("cyclic: n must be >= 1");
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return FiniteGroup::from_permutations({p});
}

inline FiniteGroup symmetric(int n) {
  if (n < 1 || n > 6) throw DomainError("symmetric: n must lie in 1..6");
  if (n == 1) return FiniteGroup::from_permutations({Perm{0}});
  Perm c(n);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return FiniteGroup::from_permutations({cycle_perm(n, {0, 1}), c});
}

/// Symmetries of the n-gon, order 2n.
inline FiniteGroup dihedral(int n) {
  if (n < 2) throw DomainError("dihedral: n must be >= 2");
  Perm r(n), s(n);
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  return FiniteGroup::from_permutations({r, s});
}

/// Quaternion group, as left multiplication on {1, i, j, k, -1, -i, -j, -k}.
inline FiniteGroup quaternion() {
  // unit index u in 0..3 (1, i, j, k) and a sign bit
  static constexpr int table[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  auto left = [&](int a) {
    Perm p(8);
    for (int x = 0; x < 8; ++x) {
      auto [u, s] = table[a][x % 4];
      p[x] = u + 4 * ((s + x / 4) % 2);
    }
    return p;
  };
  return FiniteGroup::from_permutations({left(1), left(2)});
}

/// Lookup by name: c<n>, s3, s4, d4, q8.
inline FiniteGroup by_name(const std::string& name) {
  if (name == "s3") return symmetric(3);
  if (name == "s4") return symmetric(4);
  if (name == "d4") return dihedral(4);
  if (name == "q8") return quaternion();
  if (name.size() > 1 && name[0] == 'c') {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (const std::exception&) {
      throw DomainError("unknown group '" + name + "'");
    }
    return cyclic(n);
  }
  throw DomainError("unknown group '" + name + "'");
}

}  // namespace groups

/// Sorted element indices of a subgroup.
using Subgroup = std::vector<int>;

inline Subgroup generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> elems{G.identity()};
  in[G.identity()] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (int g : gens) {
      int h = G.mul(g, elems[i]);
      if (!in[h]) {
        in[h] = 1;
        elems.push_back(h);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

/// DomainError unless H is a subgroup of G.
inline void verify_subgroup(const FiniteGroup& G, const Subgroup& H) {
  std::vector<char> in(G.order(), 0);
  for (int h : H) {
    if (h < 0 || h >= G.order()) throw DomainError("subgroup: element out of range");
    in[h] = 1;
  }
  if (H.empty() || !in[G.identity()]) throw DomainError("subgroup: missing identity");
  for (int a : H)
    for (int b : H)
      if (!in[G.mul(a, G.inv(b))]) throw DomainError("subgroup: not closed");
}

inline Subgroup whole_group(const FiniteGroup& G) {
  Subgroup H(G.order());
  std::iota(H.begin(), H.end(), 0);
  return H;
}

/// The commutator subgroup G'.
inline Subgroup derived_subgroup(const FiniteGroup& G) {
  std::vector<int> comms;
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) comms.push_back(G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return generated_subgroup(G, comms);
}

/// The group structure of H, reindexed 0..|H|-1 in the order of H.
inline FiniteGroup as_group(const FiniteGroup& G, const Subgroup& H) {
  verify_subgroup(G, H);
  std::map<int, int> pos;
  for (std::size_t i = 0; i < H.size(); ++i) pos[H[i]] = static_cast<int>(i);
  int m = static_cast<int>(H.size());
  std::vector<int> mul(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) mul[a * m + b] = pos.at(G.mul(H[a], H[b]));
  return FiniteGroup::from_table(m, std::move(mul));
}

struct ClassData {
  std::vector<int> class_of;              ///< element -> class
  std::vector<std::vector<int>> classes;  ///< sorted members; class 0 holds the identity
  std::vector<int> representatives;
  std::vector<int> sizes;
  std::size_t count() const { return classes.size(); }
};

inline ClassData conjugacy_classes(const FiniteGroup& G) {
  const int n = G.order();
  ClassData c;
  c.class_of.assign(n, -1);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_partition(order.begin(), order.end(), [&](int x) { return x == G.identity(); });
  for (int x : order) {
    if (c.class_of[x] >= 0) continue;
    int id = static_cast<int>(c.classes.size());
    std::vector<int> members;
    for (int g = 0; g < n; ++g) {
      int y = G.conj(g, x);
      if (c.class_of[y] < 0) {
        c.class_of[y] = id;
        members.push_back(y);
      } else if (c.class_of[y] != id) {
        throw IntegrityError("conjugacy_classes: inconsistent table");
      }
    }
    std::sort(members.begin(), members.end());
    c.representatives.push_back(x);
    c.sizes.push_back(static_cast<int>(members.size()));
    if (n % members.size()) throw IntegrityError("conjugacy_classes: class size does not divide |G|");
    c.classes.push_back(std::move(members));
  }
  return c;
}

struct DoubleCoset {
  int representative = 0;  ///< smallest element of K g N
  std::vector<int> elements;
};

/// The partition of G into double cosets K g N.
inline std::vector<DoubleCoset> double_cosets(const FiniteGroup& G, const Subgroup& K, const Subgroup& N) {
  verify_subgroup(G, K);
  verify_subgroup(G, N);
  std::vector<char> seen(G.order(), 0);
  std::vector<DoubleCoset> out;
  for (int g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    DoubleCoset d{g, {}};
    for (int k : K)
      for (int m : N) {
        int x = G.mul(G.mul(k, g), m);
        if (!seen[x]) {
          seen[x] = 1;
          d.elements.push_back(x);
        }
      }
    std::sort(d.elements.begin(), d.elements.end());
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace padicdiff
