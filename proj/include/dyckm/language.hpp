#ifndef DYCKM_LANGUAGE_HPP
#define DYCKM_LANGUAGE_HPP

#include <functional>
#include <vector>

#include "dyckm/alphabet.hpp"
#include "dyckm/rational.hpp"

namespace dyckm {

// Number of admissible words of length n over SigmaD. Dynamic program over
// (position, stack depth above the running minimum): an opener always carries
// a free index (factor M), a closer popping a nonempty stack is forced by the
// matching opener (factor 1), a closer on an empty stack is unmatched and free
// (factor M), units carry factor N.
Int count_words(const AlphabetParams& p, int n);

// Streams every admissible word of length n in lexicographic order (canonical
// symbol order). Enumeration is depth-first with mismatch pruning, so the cost
// is proportional to the language size, not the full shift.
void for_each_word(const AlphabetParams& p, int n, const std::function<void(const Word&)>& fn);

// Materialized variant; refuses n above the cap with resource_error (the
// language grows like (M+N+1)^n).
std::vector<Word> enumerate_words(const AlphabetParams& p, int n, int cap = 12);

// log(count_words(n)) / n; an upper approximant of the growth rate
// log(M+N+1), decreasing along doubling n by subadditivity.
double entropy_estimate(const AlphabetParams& p, int n);

}  // namespace dyckm

#endif
