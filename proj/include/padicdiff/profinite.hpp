#pragma once

// Finite quotients of the diffeomorphism group: the maps induced on Z/p^l,
// the reduction maps between levels, and closures of finite permutation
// groups generated by them.

#include <deque>
#include <map>
#include <vector>

#include "padicdiff/diffeo.hpp"

namespace padicdiff {

struct FiniteMap {
  u64 p = 0;
  int l = 0;
  Table table;

  static FiniteMap identity(u64 p, int l) {
    FiniteMap f{p, l, Table(ipow(p, l))};
    for (u64 x = 0; x < f.table.size(); ++x) f.table[x] = x;
    return f;
  }

  static FiniteMap translation(u64 p, int l, u64 c) {
    FiniteMap f = identity(p, l);
    u64 mod = f.table.size();
    for (u64 x = 0; x < mod; ++x) f.table[x] = (x + c) % mod;
    return f;
  }

  bool is_permutation() const { return detail::is_permutation(table); }
  u64 operator()(u64 x) const { return table.at(x); }
  friend bool operator==(const FiniteMap&, const FiniteMap&) = default;
};

/// a o b.
inline FiniteMap compose(const FiniteMap& a, const FiniteMap& b) {
  if (a.p != b.p || a.l != b.l) throw DomainError("FiniteMap: mismatched p or level");
  FiniteMap r{a.p, a.l, Table(a.table.size())};
  for (u64 x = 0; x < r.table.size(); ++x) r.table[x] = a.table[b.table[x]];
  return r;
}

inline FiniteMap inverse(const FiniteMap& a) {
  if (!a.is_permutation()) throw DomainError("FiniteMap: not a permutation");
  FiniteMap r{a.p, a.l, Table(a.table.size())};
  for (u64 x = 0; x < r.table.size(); ++x) r.table[a.table[x]] = x;
  return r;
}

/// The map induced on Z/p^l, evaluated from the series (or the offsets of a
/// value-table element) rather than read from the cached tables. Falls back to
/// the cached table when the series carries fewer than l digits.
inline FiniteMap truncate(const Diffeo& f, int l) {
  if (l < 1) throw DomainError("truncate: level must be >= 1");
  const u64 p = f.prime();
  if (ipow(p, l) > (u64{1} << 24)) throw DomainError("truncate: level too large to tabulate");
  FiniteMap r{p, l, Table(ipow(p, l))};
  try {
    for (u64 x = 0; x < r.table.size(); ++x) r.table[x] = f.apply_at_integer(x).residue(l);
  } catch (const PrecisionError&) {
    if (l > f.levels()) throw DomainError("truncate: level " + std::to_string(l) + " beyond cache and precision");
    r.table = f.table(l);
  }
  return r;
}

/// The map induced on Z/p^l by the cached table.
inline FiniteMap cached_truncation(const Diffeo& f, int l) { return FiniteMap{f.prime(), l, f.table(l)}; }

/// pi_{l-1} o upper = lower o pi_{l-1}.
inline bool reduction_consistency(const FiniteMap& upper, const FiniteMap& lower) {
  if (upper.p != lower.p || upper.l != lower.l + 1) throw DomainError("reduction_consistency: levels must be l and l-1");
  u64 mod = lower.table.size();
  for (u64 x = 0; x < upper.table.size(); ++x)
    if (upper.table[x] % mod != lower.table[x % mod]) return false;
  return true;
}

inline bool reduction_consistency(const Diffeo& f, int l) {
  if (l < 2) throw DomainError("reduction_consistency: needs l >= 2");
  return reduction_consistency(truncate(f, l), truncate(f, l - 1)) &&
         (l > f.levels() || reduction_consistency(cached_truncation(f, l), cached_truncation(f, l - 1)));
}

struct FinitePolyGroup {
  u64 p = 0;
  int l = 0;
  std::vector<FiniteMap> elements;  ///< elements[0] is the identity
  std::vector<FiniteMap> generators;
  bool cap_exceeded = false;

  std::size_t size() const { return elements.size(); }
};

inline constexpr std::size_t kDefaultClosureCap = 20000;

/// Breadth-first closure under composition with the generators. Stops with
/// cap_exceeded set once more than `cap` elements are found.
inline FinitePolyGroup group_closure(const std::vector<FiniteMap>& generators, std::size_t cap = kDefaultClosureCap) {
  if (generators.empty()) throw DomainError("group_closure: no generators");
  FinitePolyGroup g;
  g.p = generators.front().p;
  g.l = generators.front().l;
  for (const auto& s : generators) {
    if (s.p != g.p || s.l != g.l) throw DomainError("group_closure: generators at different (p, l)");
    if (!s.is_permutation()) throw DomainError("group_closure: generator is not a permutation");
  }
  g.generators = generators;
  std::map<Table, std::size_t> seen;
  std::deque<std::size_t> frontier;
  auto add = [&](FiniteMap m) {
    auto [it, fresh] = seen.emplace(m.table, g.elements.size());
    if (!fresh) return;
    g.elements.push_back(std::move(m));
    frontier.push_back(g.elements.size() - 1);
  };
  add(FiniteMap::identity(g.p, g.l));
  while (!frontier.empty()) {
    std::size_t i = frontier.front();
    frontier.pop_front();
    for (const auto& s : generators) {
      if (g.elements.size() > cap) {
        g.cap_exceeded = true;
        return g;
      }
      add(compose(s, g.elements[i]));
    }
  }
  return g;
}

/// The isometry exchanging the balls a + pZ_p and b + pZ_p by translation.
inline Diffeo ball_swap_diffeo(u64 p, u64 a, u64 b, int precision, int degree = kDefaultDegree,
                               int levels = kDefaultLevel) {
  if (a == b) throw DomainError("ball_swap: digits must differ");
  if (a >= p || b >= p) throw DomainError("ball_swap: digits must lie in 0..p-1");
  std::vector<PadicNumber> c(p, PadicNumber::zero(p));
  c[a] = PadicNumber::from_integer(p, static_cast<i128>(b) - static_cast<i128>(a), precision);
  c[b] = PadicNumber::from_integer(p, static_cast<i128>(a) - static_cast<i128>(b), precision);
  return Diffeo::piecewise(p, 1, std::move(c), precision, degree, levels);
}

}  // namespace padicdiff
