#include "dyckm/rng.hpp"

#include <stdexcept>

namespace dyckm {

int SeededRng::draw(const std::vector<Rat>& weights) {
  if (weights.empty()) throw std::invalid_argument("empty weight vector");
  const std::uint64_t u = next_u64();
  // pick the least i with u / 2^64 < sum_{j<=i} w_j, comparing exactly
  Int u_int(0);
  mpz_import(u_int.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  Int two64 = Int(1) << 64;
  Rat cum(0);
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    cum += weights[i];
    if (u_int * cum.get_den() < cum.get_num() * two64) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size() - 1);
}

int SeededRng::draw_uniform(int n) {
  if (n <= 0) throw std::invalid_argument("draw_uniform needs n > 0");
  // rejection to keep the draw unbiased
  const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % static_cast<std::uint64_t>(n) + 1) % static_cast<std::uint64_t>(n);
  for (;;) {
    std::uint64_t u = next_u64();
    if (u <= bound) return static_cast<int>(u % static_cast<std::uint64_t>(n));
  }
}

}  // namespace dyckm
