#ifndef DYCKM_EMBEDDING_HPP
#define DYCKM_EMBEDDING_HPP

#include <optional>

#include "dyckm/alphabet.hpp"
#include "dyckm/periodic.hpp"

namespace dyckm {

// Collapse map into the full shift: for Gamma::Alpha every right bracket loses
// its index (becomes B*), for Gamma::Beta every left bracket does (A*).
Symbol collapse_symbol(Gamma gamma, const Symbol& s);
Word collapse_word(Gamma gamma, const Word& w);
PeriodicPoint collapse(Gamma gamma, const PeriodicPoint& x);

// Membership in the domain of the collapse embedding: every bracket on the
// collapsed side is matched. For a periodic point this is a drift sign test:
// nonnegative drift closes every right bracket (Gamma::Alpha), nonpositive
// closes every left one (Gamma::Beta).
bool in_domain(Gamma gamma, const PeriodicPoint& x);

// Membership in the image of the collapse: same drift criterion read on the
// collapsed shift.
bool in_image(Gamma gamma, const PeriodicPoint& y);

struct MatchResult {
  long long position;  // queried coordinate
  long long partner;   // matching coordinate (may lie outside [0, period))
  Symbol partner_symbol;
};

// Partner of the collapsed bracket at coordinate i of y. For Gamma::Alpha the
// partner of a B* at i is the greatest j <= i whose opener is still open when
// the scan reaches i; equivalently the nearest height match on the left. For
// Gamma::Beta the scan runs right. Throws std::invalid_argument when y is not
// in the image or the symbol at i is not collapsed.
MatchResult match_position(Gamma gamma, const PeriodicPoint& y, long long i);

// Inverse of the collapse on its image: restores each collapsed bracket's
// index from its partner. reconstruct(collapse(x)) == x on the domain and
// collapse(reconstruct(y)) == y on the image.
PeriodicPoint reconstruct(Gamma gamma, const PeriodicPoint& y);

}  // namespace dyckm

#endif
