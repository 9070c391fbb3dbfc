#pragma once

// JSON documents for every public type. Integers that may exceed 2^53 are
// written as decimal strings; infinite exponents as "inf".

#include <string>
#include <vector>

#include <json.hpp>

#include "padicdiff/characters.hpp"
#include "padicdiff/flows.hpp"
#include "padicdiff/symplectic.hpp"

namespace padicdiff::io {

using json = nlohmann::json;

inline json exponent(int e) { return e == kInfinity ? json("inf") : json(e); }
inline json to_json(Val v) { return exponent(v.exponent()); }

inline int parse_exponent(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    throw DomainError("expected an integer or \"inf\"");
  }
  if (!j.is_number_integer()) throw DomainError("expected an integer exponent");
  return j.get<int>();
}

inline i128 parse_i128(const std::string& s) {
  if (s.empty()) throw DomainError("empty integer string");
  std::size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
  if (i == s.size()) throw DomainError("bad integer '" + s + "'");
  i128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw DomainError("bad integer '" + s + "'");
    if (v > (std::numeric_limits<i64>::max() - 9) / 10) throw DomainError("integer out of range '" + s + "'");
    v = v * 10 + (s[i] - '0');
  }
  return s[0] == '-' ? -v : v;
}

/// {p, precision, valuation, unit}; precision is the absolute precision.
inline json to_json(const PadicNumber& x) {
  return json{{"p", x.prime()},
              {"precision", exponent(x.absolute_precision())},
              {"valuation", exponent(x.valuation())},
              {"unit", std::to_string(x.unit())}};
}

/// Accepts the object form, an integer, or a string "a" or "a/b" (read to
/// relative precision N).
inline PadicNumber padic_from_json(const json& j, u64 p, int N) {
  if (j.is_object()) {
    u64 jp = j.value("p", p);
    int abs = parse_exponent(j.at("precision"));
    int val = parse_exponent(j.at("valuation"));
    if (val == kInfinity) return PadicNumber::zero(jp, abs);
    if (abs == kInfinity) throw DomainError("nonzero p-adic number needs a finite precision");
    return PadicNumber::from_parts(jp, val, static_cast<u64>(parse_i128(j.at("unit").get<std::string>())), abs - val);
  }
  if (j.is_number_integer()) return PadicNumber::from_integer(p, j.get<i64>(), N);
  if (j.is_string()) {
    auto s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return PadicNumber::from_integer(p, parse_i128(s), N);
    return PadicNumber::from_rational(p, parse_i128(s.substr(0, slash)), parse_i128(s.substr(slash + 1)), N);
  }
  throw DomainError("cannot read a p-adic number from " + j.dump());
}

inline std::vector<PadicNumber> padics_from_json(const json& j, u64 p, int N) {
  if (!j.is_array()) throw DomainError("expected an array of p-adic numbers");
  std::vector<PadicNumber> v;
  for (const auto& x : j) v.push_back(padic_from_json(x, p, N));
  return v;
}

inline json to_json(const std::vector<PadicNumber>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

/// {p, N, D, coeffs, tail_val}.
inline json to_json(const MahlerSeries& s) {
  return json{{"p", s.p}, {"N", s.precision}, {"D", s.degree_bound()}, {"coeffs", to_json(s.coeffs)}, {"tail_val", to_json(s.tail_val)}};
}

inline MahlerSeries series_from_json(const json& j, u64 p, int N) {
  MahlerSeries s;
  s.p = j.value("p", p);
  s.precision = j.value("N", N);
  s.coeffs = padics_from_json(j.at("coeffs"), s.p, s.precision);
  if (j.contains("D")) s.coeffs.resize(j.at("D").get<int>() + 1, PadicNumber::zero(s.p));
  s.tail_val = j.contains("tail_val") ? Val(parse_exponent(j.at("tail_val"))) : Val::infinity();
  return s;
}

inline json to_json(const Polynomial& q) { return json{{"p", q.prime()}, {"coeffs", to_json(q.coeffs())}}; }

/// Monomial coefficients, lowest degree first; either a bare array or {coeffs}.
inline Polynomial polynomial_from_json(const json& j, u64 p, int N) {
  const json& c = j.is_object() ? j.at("coeffs") : j;
  return Polynomial(j.is_object() ? j.value("p", p) : p, padics_from_json(c, p, N));
}

inline json to_json(const DistanceReport& r) {
  return json{{"value", to_json(r.value)}, {"precision", exponent(r.precision)}};
}

inline json to_json(const NormReport& r) {
  return json{{"value", to_json(r.value)}, {"stabilized", r.stabilized}, {"level", r.level}, {"precision", exponent(r.precision)}};
}

inline json table_to_json(const Table& t) {
  json a = json::array();
  for (u64 x : t) a.push_back(x);
  return a;
}

/// {kind, series, tables:{l: [perm]}, w_member}.
inline json to_json(const Diffeo& f) {
  json tables = json::object();
  for (int l = 1; l <= f.levels(); ++l) tables[std::to_string(l)] = table_to_json(f.table(l));
  json j{{"kind", f.kind() == ReprKind::Series ? "series" : "value_table"},
         {"series", to_json(f.series())},
         {"tables", tables},
         {"w_member", f.w_member()},
         {"tail_estimated", f.tail_estimated()}};
  if (f.kind() == ReprKind::ValueTable)
    j["piecewise"] = json{{"level", f.piecewise_data()->level}, {"offsets", to_json(f.piecewise_data()->offsets)}};
  if (f.poly_degree() >= 0) j["poly_degree"] = f.poly_degree();
  return j;
}

/// One of {polynomial: [...]}, {piecewise: {level, offsets}} or {series: ...}.
inline Diffeo diffeo_from_json(const json& j, u64 p, int N, int D, int L) {
  if (j.contains("piecewise")) {
    const auto& pw = j.at("piecewise");
    return Diffeo::piecewise(p, pw.at("level").get<int>(), padics_from_json(pw.at("offsets"), p, N), N, D, L);
  }
  if (j.contains("polynomial")) return Diffeo::from_polynomial(polynomial_from_json(j.at("polynomial"), p, N), N, D, L);
  if (j.contains("series")) return Diffeo::from_series(series_from_json(j.at("series"), p, N), L);
  throw DomainError("diffeomorphism needs 'polynomial', 'piecewise' or 'series'");
}

inline json to_json(const VectorField& A) {
  return json{{"p", A.a.p}, {"N", A.precision()}, {"D", A.degree()}, {"monomial", to_json(A.mono.coeffs())},
              {"tail", to_json(A.tail)}, {"norm", to_json(A.norm())}};
}

/// {monomial: [...]} (coefficients of a(x) in a(x) d/dx) or {series: ...}.
inline VectorField field_from_json(const json& j, u64 p, int N, int D) {
  if (j.contains("series")) return VectorField::from_series(series_from_json(j.at("series"), p, N));
  const json& c = j.is_object() ? j.at("monomial") : j;
  return VectorField::from_polynomial(Polynomial(p, padics_from_json(c, p, N)), D, N);
}

inline json to_json(const FiniteMap& f) { return json{{"p", f.p}, {"l", f.l}, {"table", table_to_json(f.table)}}; }

inline FiniteMap finite_map_from_json(const json& j) {
  FiniteMap f{j.at("p").get<u64>(), j.at("l").get<int>(), j.at("table").get<Table>()};
  if (f.table.size() != ipow(f.p, f.l)) throw DomainError("finite map table has the wrong size");
  return f;
}

inline std::string exponent_key(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s;
}

inline Exponent parse_exponent_key(const std::string& s, int n) {
  Exponent e;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    e.push_back(static_cast<int>(parse_i128(s.substr(pos, next - pos))));
    pos = next + 1;
  }
  if (static_cast<int>(e.size()) != n) throw DomainError("exponent '" + s + "' has the wrong length");
  for (int k : e)
    if (k < 0) throw DomainError("negative exponent in '" + s + "'");
  return e;
}

/// Sparse {"i,j,...": coefficient}.
inline json to_json(const MPoly& f) {
  json o = json::object();
  for (const auto& [e, c] : f.terms()) o[exponent_key(e)] = to_json(c);
  return o;
}

inline MPoly mpoly_from_json(const json& j, u64 p, int n) {
  if (!j.is_object()) throw DomainError("polynomial must be an object {exponents: coefficient}");
  MPoly f(p, n);
  for (const auto& [k, v] : j.items()) f.add_term(parse_exponent_key(k, n), padic_from_json(v, p, max_precision(p)));
  return f;
}

inline json to_json(const std::vector<MPoly>& v) {
  json a = json::array();
  for (const auto& f : v) a.push_back(to_json(f));
  return a;
}

inline std::vector<MPoly> mpolys_from_json(const json& j, u64 p, int n) {
  std::vector<MPoly> v;
  for (const auto& x : j) v.push_back(mpoly_from_json(x, p, n));
  if (static_cast<int>(v.size()) != n) throw DomainError("expected " + std::to_string(n) + " components");
  return v;
}

inline json to_json(const OneForm& A) { return json{{"p", A.p}, {"n", A.n}, {"A", to_json(A.A)}}; }
inline json to_json(const PolyMap& g) { return json{{"p", g.p}, {"n", g.n}, {"g", to_json(g.g)}}; }

inline json to_json(const TwoForm& F) {
  json rows = json::array();
  for (const auto& r : F.F) rows.push_back(to_json(r));
  return json{{"p", F.p}, {"n", F.n}, {"F", rows}};
}

inline OneForm one_form_from_json(const json& j, u64 p) {
  int n = j.at("n").get<int>();
  return OneForm{p, n, mpolys_from_json(j.at("A"), p, n)};
}

inline PolyMap poly_map_from_json(const json& j, u64 p) {
  int n = j.at("n").get<int>();
  return PolyMap{p, n, mpolys_from_json(j.at("g"), p, n)};
}

inline json to_json(const Cyclotomic& z) { return json{{"text", z.to_string()}, {"coeffs", z.coeffs()}}; }

inline json to_json(const ClassData& c) {
  json a = json::array();
  for (std::size_t i = 0; i < c.count(); ++i) a.push_back(json{{"representative", c.representatives[i]}, {"size", c.sizes[i]}});
  return a;
}

inline json to_json(const FiniteGroup& G) {
  json j{{"order", G.order()}, {"exponent", G.exponent()}, {"abelian", G.is_abelian()}};
  if (!G.permutations().empty()) j["permutations"] = G.permutations();
  return j;
}

inline json to_json(const CharacterTable& T) {
  json chars = json::array();
  for (const auto& row : T.chars) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.to_string());
    chars.push_back(r);
  }
  json coeffs = json::array();
  for (const auto& row : T.chars) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.coeffs());
    coeffs.push_back(r);
  }
  return json{{"cyclotomic_order", T.field->order()},
              {"modulus", T.modulus},
              {"classes", to_json(T.classes)},
              {"degrees", T.degrees},
              {"characters", chars},
              {"coefficients", coeffs}};
}

inline json function_to_json(const ElementFunction& f, const Subgroup& on) {
  json a = json::array();
  for (int x : on) a.push_back(f[x].to_string());
  return a;
}

inline json to_json(const MackeyCertificate& c, const Subgroup& on, bool with_terms) {
  json j{{"holds", c.holds}, {"lhs", function_to_json(c.lhs, on)}, {"rhs", function_to_json(c.rhs, on)}};
  if (with_terms) {
    json terms = json::array();
    for (const auto& t : c.terms)
      terms.push_back(json{{"representative", t.representative},
                           {"double_coset_size", t.coset_size},
                           {"intersection", t.intersection},
                           {"constituent", function_to_json(t.constituent, on)}});
    j["terms"] = terms;
  }
  return j;
}

}  // namespace padicdiff::io
