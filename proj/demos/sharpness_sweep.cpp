// Sweeps alpha toward 0 with beta fixed at pi/4 and prints how the squared
// norm ratio climbs toward sqrt(2) while the similarity condition lower
// bound blows up.

#include <cstdio>
#include <numbers>

#include "fourmean/fourmean.hpp"

int main() {
  using namespace fourmean;
  const double beta = std::numbers::pi / 4.0;
  const Polynomial square = Polynomial::monomial(2);

  std::printf("%10s %18s %18s %18s\n", "alpha", "|A^2|/|B^2|", "sqrt2 - ratio", "cond bound");
  for (double alpha = 0.5; alpha > 2e-5; alpha *= 0.5) {
    const FRPair pair = fr_pair(alpha, beta);
    const NormBoundReport norm = norm_bound_check(pair.a, pair.b, square);
    const SimilarityBound cond = similarity_cond_lower_bound(pair.a, pair.b, {square});
    std::printf("%10.6f %18.12f %18.3e %18.6f\n", alpha, norm.ratio,
                std::numbers::sqrt2 - norm.ratio, cond.lower);
  }
  return 0;
}
