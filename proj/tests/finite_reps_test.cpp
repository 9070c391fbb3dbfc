#include <gtest/gtest.h>

#include <set>

#include "padicdiff/characters.hpp"

using namespace padicdiff;

namespace {

int find_perm(const FiniteGroup& G, const Perm& p) {
  const auto& ps = G.permutations();
  auto it = std::find(ps.begin(), ps.end(), p);
  if (it == ps.end()) throw std::runtime_error("permutation not in group");
  return static_cast<int>(it - ps.begin());
}

Subgroup gen(const FiniteGroup& G, std::vector<Perm> gens) {
  std::vector<int> idx;
  for (const auto& p : gens) idx.push_back(find_perm(G, p));
  return generated_subgroup(G, idx);
}

Perm cyc(int d, std::initializer_list<int> c) { return groups::cycle_perm(d, c); }

FiniteGroup profinite_group(u64 p, int l) {
  auto s = truncate(ball_swap_diffeo(p, 0, 1, 16, 16), l);
  return FiniteGroup::from_finite_maps({s, FiniteMap::translation(p, l, 1)});
}

std::vector<FiniteGroup> suite() {
  std::vector<FiniteGroup> gs;
  for (int n = 1; n <= 12; ++n) gs.push_back(groups::cyclic(n));
  for (auto name : {"s3", "s4", "d4", "q8"}) gs.push_back(groups::by_name(name));
  gs.push_back(profinite_group(2, 2));
  gs.push_back(profinite_group(2, 3));
  gs.push_back(profinite_group(3, 1));
  return gs;
}

std::multiset<int> degrees(const CharacterTable& T) { return {T.degrees.begin(), T.degrees.end()}; }

}  // namespace

TEST(FiniteGroup, NamedGroups) {
  EXPECT_EQ(groups::cyclic(9).order(), 9);
  EXPECT_EQ(groups::symmetric(4).order(), 24);
  EXPECT_EQ(groups::dihedral(4).order(), 8);
  auto q8 = groups::quaternion();
  EXPECT_EQ(q8.order(), 8);
  // Q8 has a single involution, D4 has five
  auto involutions = [](const FiniteGroup& G) {
    int c = 0;
    for (int g = 0; g < G.order(); ++g) c += G.element_order(g) == 2;
    return c;
  };
  EXPECT_EQ(involutions(q8), 1);
  EXPECT_EQ(involutions(groups::dihedral(4)), 5);
  EXPECT_THROW(groups::by_name("x7"), DomainError);
  EXPECT_THROW(FiniteGroup::from_permutations({{0, 0, 1}}), DomainError);
  EXPECT_THROW(FiniteGroup::from_table(2, {0, 1, 1, 1}), IntegrityError);
}

TEST(ConjugacyClasses, Examples) {
  auto c = conjugacy_classes(groups::cyclic(6));
  EXPECT_EQ(c.count(), 6u);
  auto s3 = conjugacy_classes(groups::symmetric(3));
  std::multiset<int> sizes(s3.sizes.begin(), s3.sizes.end());
  EXPECT_EQ(sizes, (std::multiset<int>{1, 2, 3}));
  auto c9 = FiniteGroup::from_finite_maps({FiniteMap::translation(3, 2, 1)});
  auto k9 = conjugacy_classes(c9);
  EXPECT_EQ(k9.count(), 9u);
  for (int s : k9.sizes) EXPECT_EQ(s, 1);
}

TEST(CharacterTable, Degrees) {
  EXPECT_EQ(degrees(character_table(groups::cyclic(2))), (std::multiset<int>{1, 1}));
  EXPECT_EQ(degrees(character_table(groups::symmetric(3))), (std::multiset<int>{1, 1, 2}));
  EXPECT_EQ(degrees(character_table(groups::dihedral(4))), (std::multiset<int>{1, 1, 1, 1, 2}));
  EXPECT_EQ(degrees(character_table(groups::quaternion())), (std::multiset<int>{1, 1, 1, 1, 2}));
  EXPECT_EQ(degrees(character_table(groups::symmetric(4))), (std::multiset<int>{1, 1, 2, 3, 3}));
}

TEST(CharacterTable, SuiteOrthogonalityAndDegreeOracle) {
  for (const auto& G : suite()) {
    auto T = character_table(G);
    EXPECT_TRUE(check_orthogonality(T)) << "|G|=" << G.order();
    EXPECT_EQ(T.size(), T.classes.count());
    // linear characters count |G/G'|
    int linear = static_cast<int>(std::count(T.degrees.begin(), T.degrees.end(), 1));
    EXPECT_EQ(linear, G.order() / static_cast<int>(derived_subgroup(G).size()));
    int sum = 0;
    for (int d : T.degrees) sum += d * d;
    EXPECT_EQ(sum, G.order());
    auto m = decompose_regular(G, T);
    for (std::size_t i = 0; i < T.size(); ++i) EXPECT_EQ(m[i], T.degrees[i]);
    EXPECT_TRUE(T.chars[0] == std::vector<Cyclotomic>(T.classes.count(), Cyclotomic::integer(T.field, 1)));
  }
}

TEST(CharacterTable, ProfiniteGroupsIdentified) {
  // translations and one ball swap on Z/4 give a group of order 8
  auto G = profinite_group(2, 2);
  EXPECT_EQ(G.order(), 8);
  EXPECT_FALSE(G.is_abelian());
  EXPECT_EQ(profinite_group(3, 1).order(), 6);
}

TEST(Induce, Examples) {
  auto G = groups::symmetric(3);
  auto T = character_table(G);
  auto all = whole_group(G);
  for (std::size_t i = 0; i < T.size(); ++i) EXPECT_EQ(induce(G, all, T.on_elements(i)), T.on_elements(i));
  Subgroup e{G.identity()};
  EXPECT_EQ(induce(G, e, trivial_character(G, e, T.field)), regular_character(G, T.field));
  auto A3 = gen(G, {cyc(3, {0, 1, 2})});
  ASSERT_EQ(A3.size(), 3u);
  auto chars = subgroup_characters(G, A3, T.field);
  ASSERT_EQ(chars.size(), 3u);
  for (std::size_t i = 1; i < chars.size(); ++i) EXPECT_EQ(induce(G, A3, chars[i]), T.on_elements(2));
  Subgroup bad{G.identity(), find_perm(G, cyc(3, {0, 1, 2}))};
  EXPECT_THROW(induce(G, bad, trivial_character(G, bad, T.field)), DomainError);
}

TEST(Induce, FrobeniusReciprocity) {
  for (auto name : {"s3", "s4", "d4", "q8"}) {
    auto G = groups::by_name(name);
    auto T = character_table(G);
    std::vector<Subgroup> subs;
    for (int g = 0; g < G.order(); ++g) subs.push_back(generated_subgroup(G, {g}));
    std::sort(subs.begin(), subs.end());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    for (const auto& H : subs)
      for (const auto& chi : subgroup_characters(G, H, T.field)) {
        auto ind = induce(G, H, chi);
        EXPECT_EQ(ind[G.identity()].as_integer(), chi[G.identity()].as_integer() * (G.order() / static_cast<int>(H.size())));
        for (std::size_t i = 0; i < T.size(); ++i) {
          auto psi = T.on_elements(i);
          EXPECT_EQ(inner_product(whole_group(G), ind, psi), inner_product(H, chi, psi)) << name;
        }
      }
  }
}

TEST(DoubleCosets, Examples) {
  auto G = groups::symmetric(3);
  EXPECT_EQ(double_cosets(G, whole_group(G), whole_group(G)).size(), 1u);
  Subgroup e{G.identity()};
  EXPECT_EQ(double_cosets(G, e, e).size(), 6u);
  auto H = gen(G, {cyc(3, {0, 1})});
  auto dc = double_cosets(G, H, H);
  std::multiset<std::size_t> sizes;
  for (const auto& d : dc) sizes.insert(d.elements.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{2, 4}));
}

TEST(Mackey, Examples) {
  auto G = groups::symmetric(3);
  auto T = character_table(G);
  auto A3 = gen(G, {cyc(3, {0, 1, 2})});
  auto N = gen(G, {cyc(3, {0, 1})});
  auto all = whole_group(G);
  // K = G: both sides are Res_N chi
  auto chi = T.on_elements(2);
  auto c0 = mackey_restriction_check(G, all, N, chi);
  EXPECT_TRUE(c0.holds);
  EXPECT_EQ(c0.lhs, restrict_to(N, chi));
  auto c1 = mackey_restriction_check(G, A3, N, trivial_character(G, A3, T.field));
  EXPECT_TRUE(c1.holds);
  ASSERT_EQ(c1.terms.size(), 1u);
  EXPECT_EQ(c1.terms[0].intersection, Subgroup{G.identity()});
  // the regular character of N
  EXPECT_EQ(c1.lhs[G.identity()].as_integer(), 2);
  EXPECT_TRUE(c1.lhs[N[1]].is_zero());
}

TEST(Mackey, BurnsideCountingForTrivialCharacters) {
  // Ind 1_K . Ind 1_N at g counts pairs of fixed cosets; the right side is a
  // sum of permutation characters on G/(g^-1 K g cap N)
  auto G = groups::symmetric(4);
  auto T = character_table(G);
  auto K = gen(G, {cyc(4, {0, 1, 2}), cyc(4, {0, 1})});
  auto N = gen(G, {cyc(4, {0, 1, 2, 3})});
  auto cert = tensor_product_check(G, K, N, trivial_character(G, K, T.field), trivial_character(G, N, T.field));
  EXPECT_TRUE(cert.holds);
  auto fixed = [&](const Subgroup& H, int g) {
    int c = 0;
    for (int x = 0; x < G.order(); ++x)
      if (std::binary_search(H.begin(), H.end(), G.conj(G.inv(x), g))) ++c;
    return c / static_cast<int>(H.size());
  };
  for (int g = 0; g < G.order(); ++g) {
    EXPECT_EQ(cert.lhs[g].as_integer(), fixed(K, g) * fixed(N, g));
    int rhs = 0;
    for (const auto& t : cert.terms) rhs += fixed(t.intersection, g);
    EXPECT_EQ(cert.rhs[g].as_integer(), rhs);
  }
}

TEST(Mackey, MatrixOfCases) {
  struct Case {
    std::string name;
    FiniteGroup G;
    Subgroup K, N;
  };
  std::vector<Case> cases;
  {
    auto G = groups::symmetric(3);
    cases.push_back({"s3 A3 <(01)>", G, gen(G, {cyc(3, {0, 1, 2})}), gen(G, {cyc(3, {0, 1})})});
    cases.push_back({"s3 <(01)> <(12)>", G, gen(G, {cyc(3, {0, 1})}), gen(G, {cyc(3, {1, 2})})});
  }
  {
    auto G = groups::symmetric(4);
    cases.push_back({"s4 S3 <(0123)>", G, gen(G, {cyc(4, {0, 1, 2}), cyc(4, {0, 1})}), gen(G, {cyc(4, {0, 1, 2, 3})})});
    cases.push_back({"s4 A4 V4", G, gen(G, {cyc(4, {0, 1, 2}), cyc(4, {1, 2, 3})}),
                     gen(G, {{1, 0, 3, 2}, {2, 3, 0, 1}})});
    cases.push_back({"s4 D4 D4'", G, gen(G, {cyc(4, {0, 1, 2, 3}), cyc(4, {0, 2})}),
                     gen(G, {cyc(4, {0, 2, 1, 3}), cyc(4, {0, 1})})});
  }
  {
    auto G = groups::dihedral(4);
    cases.push_back({"d4 <r> <s>", G, gen(G, {{1, 2, 3, 0}}), gen(G, {{0, 3, 2, 1}})});
    cases.push_back({"d4 <r^2,s> <s r>", G, gen(G, {{2, 3, 0, 1}, {0, 3, 2, 1}}), gen(G, {{1, 0, 3, 2}})});
    cases.push_back({"d4 <s> <s>", G, gen(G, {{0, 3, 2, 1}}), gen(G, {{0, 3, 2, 1}})});
  }
  {
    auto G = groups::quaternion();
    cases.push_back({"q8 <i> <j>", G, generated_subgroup(G, {1}), generated_subgroup(G, {2})});
  }
  {
    auto G = profinite_group(2, 3);
    cases.push_back({"profinite 2^3 <t> <swap>", G, generated_subgroup(G, {2}), generated_subgroup(G, {1})});
  }
  ASSERT_GE(cases.size(), 10u);
  for (const auto& c : cases) {
    auto T = character_table(c.G);
    auto kc = subgroup_characters(c.G, c.K, T.field);
    auto nc = subgroup_characters(c.G, c.N, T.field);
    for (const auto& chi : kc) {
      EXPECT_TRUE(mackey_restriction_check(c.G, c.K, c.N, chi).holds) << c.name;
      for (const auto& psi : nc) EXPECT_TRUE(tensor_product_check(c.G, c.K, c.N, chi, psi).holds) << c.name;
    }
  }
}

TEST(Mackey, DetectsWrongIdentity) {
  // dropping a double coset term must break the equality
  auto G = groups::symmetric(3);
  auto T = character_table(G);
  auto H = gen(G, {cyc(3, {0, 1})});
  auto cert = mackey_restriction_check(G, H, H, trivial_character(G, H, T.field));
  ASSERT_TRUE(cert.holds);
  ASSERT_EQ(cert.terms.size(), 2u);
  auto partial = cert.rhs;
  for (int x : H) partial[x] -= cert.terms[1].constituent[x];
  EXPECT_FALSE(partial == cert.lhs);
}

TEST(TensorProduct, WholeGroupIsPointwiseProduct) {
  auto G = groups::dihedral(4);
  auto T = character_table(G);
  auto all = whole_group(G);
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < T.size(); ++j) {
      auto cert = tensor_product_check(G, all, all, T.on_elements(i), T.on_elements(j));
      EXPECT_TRUE(cert.holds);
      EXPECT_EQ(cert.lhs, pointwise_product(T.on_elements(i), T.on_elements(j)));
    }
}
