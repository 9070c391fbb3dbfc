// Integrate a small polynomial field, take the logarithm of the time-one map,
// and print how far the round trip lands from where it started.

#include <cstdio>

#include "padicdiff/flows.hpp"

using namespace padicdiff;

int main() {
  const u64 p = 3;
  const int N = 16, D = 24;
  auto c = [&](i128 n) { return PadicNumber::from_integer(p, n, N); };

  // A = 9 (1 + x + 2x^3) d/dx
  auto A = VectorField::from_polynomial(Polynomial(p, {c(9), c(9), c(0), c(18)}), D, N);
  auto flow = exp_field(A, c(1));
  auto back = log_diffeo(flow.g_q);

  std::printf("||A|| = %s, iterations = %zu\n", back.p_norm.to_string().c_str(), back.steps.size());
  for (const auto& s : back.steps)
    std::printf("  step %d  change %s\n", s.j, s.change.to_string().c_str());
  auto d = field_distance(back.A, A);
  std::printf("log(exp A) - A: %s, certified to p^%d\n", d.value.to_string().c_str(), d.precision);

  // the m = 2 monomial flow has the closed form x / (1 - q x)
  auto m2 = monomial_flow(2, c(3), 8);
  std::printf("g_q for x^2 d/dx, q = 3:");
  for (int k = 0; k <= m2.g.degree(); ++k) std::printf(" %s", m2.g.coeff(k).to_string().c_str());
  std::printf("\n");
}
