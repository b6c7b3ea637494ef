#include "dyckm/embedding.hpp"

#include <stdexcept>

namespace dyckm {

Symbol collapse_symbol(Gamma gamma, const Symbol& s) {
  if (gamma == Gamma::Alpha && s.kind == SymbolKind::RightBracket) return collapsed_right();
  if (gamma == Gamma::Beta && s.kind == SymbolKind::LeftBracket) return collapsed_left();
  return s;
}

Word collapse_word(Gamma gamma, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Symbol& s : w) out.push_back(collapse_symbol(gamma, s));
  return out;
}

PeriodicPoint collapse(Gamma gamma, const PeriodicPoint& x) {
  if (x.ambient() != Ambient::SigmaD)
    throw std::invalid_argument("collapse expects a SigmaD point");
  return PeriodicPoint(x.params(), collapsed_ambient(gamma), collapse_word(gamma, x.block()));
}

bool in_domain(Gamma gamma, const PeriodicPoint& x) {
  if (x.ambient() != Ambient::SigmaD)
    throw std::invalid_argument("domain test expects a SigmaD point");
  // Nonnegative drift pushes heights down toward -inf on the left, so every
  // closer finds its height match; the mirrored sign closes every opener.
  return gamma == Gamma::Alpha ? x.period_drift() >= 0 : x.period_drift() <= 0;
}

bool in_image(Gamma gamma, const PeriodicPoint& y) {
  if (y.ambient() != collapsed_ambient(gamma))
    throw std::invalid_argument("image test expects a point of the collapsed shift");
  return gamma == Gamma::Alpha ? y.period_drift() >= 0 : y.period_drift() <= 0;
}

MatchResult match_position(Gamma gamma, const PeriodicPoint& y, long long i) {
  if (!in_image(gamma, y))
    throw std::invalid_argument("point " + periodic_to_string(y) +
                                " is outside the embedding image");
  const Symbol& s = y.at(i);
  const long long p = y.period();
  const long long cap = p * (p + 3) + 2;

  if (gamma == Gamma::Alpha) {
    if (s.kind != SymbolKind::CollapsedRight)
      throw std::invalid_argument("no collapsed bracket at the queried coordinate");
    // The partner is the greatest j <= i whose height matches height(i+1):
    // scanning left, the first time the relative height returns to zero. The
    // first hit is necessarily an opener.
    long long rel = 1;  // height(i) - height(i+1)
    for (long long j = i - 1; j >= i - cap; --j) {
      rel -= height_step(y.at(j));
      if (rel == 0) return {i, j, y.at(j)};
    }
  } else {
    if (s.kind != SymbolKind::CollapsedLeft)
      throw std::invalid_argument("no collapsed bracket at the queried coordinate");
    // Mirror: scanning right, the first time the height returns to its value
    // before the opener; the symbol closing the excursion is the partner.
    long long rel = 1;  // height(i+1) - height(i)
    for (long long j = i + 1; j <= i + cap; ++j) {
      rel += height_step(y.at(j));
      if (rel == 0) return {i, j, y.at(j)};
    }
  }
  throw std::logic_error("match scan exceeded its bound on an in-image point");
}

PeriodicPoint reconstruct(Gamma gamma, const PeriodicPoint& y) {
  if (!in_image(gamma, y))
    throw std::invalid_argument("point " + periodic_to_string(y) +
                                " is outside the embedding image");
  Word block = y.block();
  for (long long i = 0; i < y.period(); ++i) {
    const Symbol& s = block[static_cast<std::size_t>(i)];
    if (s.kind == SymbolKind::CollapsedRight) {
      MatchResult m = match_position(gamma, y, i);
      block[static_cast<std::size_t>(i)] = right_bracket(m.partner_symbol.index);
    } else if (s.kind == SymbolKind::CollapsedLeft) {
      MatchResult m = match_position(gamma, y, i);
      block[static_cast<std::size_t>(i)] = left_bracket(m.partner_symbol.index);
    }
  }
  return PeriodicPoint(y.params(), Ambient::SigmaD, block);
}

}  // namespace dyckm
