// Character tables of a few small groups, including a finite quotient of the
// profinite group generated by a ball swap and the unit translation.

#include <cstdio>
#include <string>

#include "padicdiff/characters.hpp"

using namespace padicdiff;

void print_table(const std::string& name, const FiniteGroup& G) {
  auto T = character_table(G);
  std::printf("%s: order %d, %zu classes, values in Q(zeta_%d)\n", name.c_str(), G.order(), T.size(), T.field->order());
  for (std::size_t i = 0; i < T.size(); ++i) {
    std::printf("  chi%zu (deg %d):", i, static_cast<int>(T.degrees[i]));
    for (const auto& v : T.chars[i]) std::printf(" %s", v.to_string().c_str());
    std::printf("\n");
  }
  std::printf("  orthogonality %s\n", check_orthogonality(T) ? "ok" : "FAILS");
}

int main() {
  print_table("S3", groups::symmetric(3));
  print_table("Q8", groups::quaternion());
  print_table("C5", groups::cyclic(5));

  const u64 p = 2;
  const int l = 3;
  auto swap = truncate(ball_swap_diffeo(p, 0, 1, 16, 16), l);
  auto G = FiniteGroup::from_finite_maps({swap, FiniteMap::translation(p, l, 1)});
  print_table("<swap, x+1> mod 8", G);

  // Ind from A3 of a nontrivial linear character is the 2-dimensional irreducible
  auto S3 = groups::symmetric(3);
  int r = 1;
  while (S3.element_order(r) != 3) ++r;
  auto A3 = generated_subgroup(S3, {r});
  auto T = character_table(S3);
  auto chis = subgroup_characters(S3, A3, T.field);
  auto ind = induce(S3, A3, chis.back());
  for (std::size_t i = 0; i < T.size(); ++i)
    std::printf("<Ind chi, chi%zu> = %lld\n", i, static_cast<long long>(inner_product(whole_group(S3), ind, T.on_elements(i))));
}
