#ifndef DYCKM_RNG_HPP
#define DYCKM_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dyckm/rational.hpp"

namespace dyckm {

// All randomness in the toolkit flows through this wrapper so that a single
// explicit seed makes every run reproducible. Categorical draws compare the
// raw 64-bit draw against exact rational cumulative weights, avoiding any
// dependence on library distribution internals.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Index into weights (must sum to 1) with exact cumulative comparison.
  int draw(const std::vector<Rat>& weights);

  int draw_uniform(int n);  // uniform in [0, n)

 private:
  std::mt19937_64 gen_;
};

}  // namespace dyckm

#endif
