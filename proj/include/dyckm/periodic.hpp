#ifndef DYCKM_PERIODIC_HPP
#define DYCKM_PERIODIC_HPP

#include <string>

#include "dyckm/alphabet.hpp"
#include "dyckm/reduce.hpp"

namespace dyckm {

// w^inf is admissible iff reduce(w w) is nonzero: squaring exposes every
// cross-period adjacency, and further powers cannot create new mismatches
// because the surviving opener run of one period meets the closer run of the
// next exactly as it did in the square.
bool periodic_admissible(const AlphabetParams& p, const Word& block);

// The smallest cyclic shift of the primitive root of the block.
Word canonical_cycle(const AlphabetParams& p, Ambient ambient, const Word& block);

// A periodic point of one of the three shifts, stored as the canonical block.
// Two periodic points are equal iff they generate the same orbit.
class PeriodicPoint {
 public:
  // Canonicalizes; for SigmaD verifies periodic admissibility.
  PeriodicPoint(AlphabetParams p, Ambient ambient, const Word& block);

  const AlphabetParams& params() const { return params_; }
  Ambient ambient() const { return ambient_; }
  const Word& block() const { return block_; }
  int period() const { return static_cast<int>(block_.size()); }

  // Symbol at an arbitrary coordinate (negative indices wrap).
  const Symbol& at(long long i) const;

  // Net height change over one period.
  int period_drift() const;

  // First n symbols starting at coordinate 0.
  Word unroll(int n) const;

  friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;

 private:
  AlphabetParams params_;
  Ambient ambient_;
  Word block_;
};

// Class of the orbit by drift sign: Negative for upward drift (openers
// dominate), Positive for downward, Neutral for zero; matches classify() on
// sign-correct blocks.
WordClass periodic_class(const PeriodicPoint& x);

std::string periodic_to_string(const PeriodicPoint& x);

}  // namespace dyckm

#endif
