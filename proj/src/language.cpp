#include "dyckm/language.hpp"

#include <cmath>
#include <stdexcept>

#include "dyckm/errors.hpp"
#include "dyckm/reduce.hpp"

namespace dyckm {

Int count_words(const AlphabetParams& p, int n) {
  if (n < 0) throw std::invalid_argument("negative length");
  if (p.M < 1) throw std::invalid_argument("alphabet needs M >= 1");
  // c[d] = weighted count of prefixes whose open-bracket stack has depth d.
  // Matching forces a closer's index whenever the stack is nonempty, so only
  // depth matters: opener factor M, forced closer 1, unmatched closer M,
  // unit factor N.
  std::vector<Int> c(n + 1), next(n + 1);
  c[0] = 1;
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d <= n; ++d) next[d] = 0;
    for (int d = 0; d <= i; ++d) {
      if (c[d] == 0) continue;
      next[d + 1] += c[d] * p.M;
      if (d > 0)
        next[d - 1] += c[d];
      else
        next[0] += c[0] * p.M;
      if (p.N > 0) next[d] += c[d] * p.N;
    }
    std::swap(c, next);
  }
  Int total = 0;
  for (int d = 0; d <= n; ++d) total += c[d];
  return total;
}

namespace {

void enumerate_rec(const AlphabetParams& p, const std::vector<Symbol>& alphabet, int n, Word& w,
                   std::vector<int>& stack, int unmatched_closers,
                   const std::function<void(const Word&)>& fn) {
  if (static_cast<int>(w.size()) == n) {
    fn(w);
    return;
  }
  for (const Symbol& s : alphabet) {
    bool pops = false;
    if (s.kind == SymbolKind::RightBracket && !stack.empty()) {
      if (stack.back() != s.index) continue;  // mismatch: prune the branch
      pops = true;
    }
    w.push_back(s);
    if (s.kind == SymbolKind::LeftBracket) {
      stack.push_back(s.index);
      enumerate_rec(p, alphabet, n, w, stack, unmatched_closers, fn);
      stack.pop_back();
    } else if (pops) {
      int k = stack.back();
      stack.pop_back();
      enumerate_rec(p, alphabet, n, w, stack, unmatched_closers, fn);
      stack.push_back(k);
    } else {
      enumerate_rec(p, alphabet, n, w, stack,
                    unmatched_closers + (s.kind == SymbolKind::RightBracket ? 1 : 0), fn);
    }
    w.pop_back();
  }
}

}  // namespace

void for_each_word(const AlphabetParams& p, int n,
                   const std::function<void(const Word&)>& fn) {
  if (n < 0) throw std::invalid_argument("negative length");
  auto alphabet = ambient_alphabet(p, Ambient::SigmaD);
  Word w;
  w.reserve(n);
  std::vector<int> stack;
  enumerate_rec(p, alphabet, n, w, stack, 0, fn);
}

std::vector<Word> enumerate_words(const AlphabetParams& p, int n, int cap) {
  if (n > cap)
    throw resource_error("enumeration length " + std::to_string(n) + " above cap " +
                         std::to_string(cap));
  std::vector<Word> out;
  for_each_word(p, n, [&](const Word& w) { out.push_back(w); });
  return out;
}

double entropy_estimate(const AlphabetParams& p, int n) {
  if (n < 1) throw std::invalid_argument("length must be positive");
  Int c = count_words(p, n);
  // log of a big integer via mantissa + exponent split
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, c.get_mpz_t());
  return (std::log(mant) + static_cast<double>(exp2) * std::log(2.0)) / n;
}

}  // namespace dyckm
