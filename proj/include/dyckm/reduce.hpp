#ifndef DYCKM_REDUCE_HPP
#define DYCKM_REDUCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "dyckm/alphabet.hpp"

namespace dyckm {

// Normal form of a word in the bracket monoid: a run of unmatched closers
// followed by a run of unmatched openers (indices only), or zero when some
// pair mismatches. Units are absorbed; the empty word reduces to the identity
// (both runs empty).
struct ReducedForm {
  bool zero = false;
  std::vector<int> closers;  // right-bracket indices, left to right
  std::vector<int> openers;  // left-bracket indices, left to right

  bool is_identity() const { return !zero && closers.empty() && openers.empty(); }
  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

std::string reduced_to_string(const ReducedForm& r);

// Reduces a word over the SigmaD alphabet. Words over collapsed alphabets are
// rejected (their closers carry no index to match against).
ReducedForm reduce(const AlphabetParams& p, const Word& w);

// A word is admissible exactly when its reduction is nonzero; subwords of an
// admissible word are then admissible as well, since zero is absorbing under
// concatenation.
bool is_admissible(const AlphabetParams& p, const Word& w);

enum class WordClass { Neutral, Negative, Positive, Mixed, Inadmissible };

std::string word_class_name(WordClass c);

// Neutral: reduces to the identity. Negative: unmatched openers only.
// Positive: unmatched closers only. Mixed: both runs nonempty.
WordClass classify(const AlphabetParams& p, const Word& w);

// Partial sums of height steps: result[0] = 0, result[i] = sum of the first i
// steps; works over any ambient since steps depend only on the symbol kind.
std::vector<int> height_profile(const Word& w);

// Net height change over the word.
int drift(const Word& w);

}  // namespace dyckm

#endif
