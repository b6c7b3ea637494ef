#include "dyckm/reduce.hpp"

#include <stdexcept>

namespace dyckm {

std::string reduced_to_string(const ReducedForm& r) {
  if (r.zero) return "0";
  if (r.is_identity()) return "1";
  std::string out;
  for (int k : r.closers) {
    if (!out.empty()) out += ' ';
    out += "B" + std::to_string(k);
  }
  for (int k : r.openers) {
    if (!out.empty()) out += ' ';
    out += "A" + std::to_string(k);
  }
  return out;
}

ReducedForm reduce(const AlphabetParams& p, const Word& w) {
  ReducedForm r;
  for (const Symbol& s : w) {
    switch (s.kind) {
      case SymbolKind::LeftBracket:
        if (s.index < 1 || s.index > p.M) throw std::invalid_argument("bracket index out of range");
        r.openers.push_back(s.index);
        break;
      case SymbolKind::RightBracket:
        if (s.index < 1 || s.index > p.M) throw std::invalid_argument("bracket index out of range");
        if (r.openers.empty()) {
          r.closers.push_back(s.index);
        } else if (r.openers.back() == s.index) {
          r.openers.pop_back();
        } else {
          r.zero = true;
          r.closers.clear();
          r.openers.clear();
          return r;
        }
        break;
      case SymbolKind::Unit:
        if (s.index < 1 || s.index > p.N) throw std::invalid_argument("unit index out of range");
        break;
      default:
        throw std::invalid_argument("reduce needs indexed brackets, got " + symbol_token(s));
    }
  }
  return r;
}

bool is_admissible(const AlphabetParams& p, const Word& w) { return !reduce(p, w).zero; }

std::string word_class_name(WordClass c) {
  switch (c) {
    case WordClass::Neutral:
      return "neutral";
    case WordClass::Negative:
      return "negative";
    case WordClass::Positive:
      return "positive";
    case WordClass::Mixed:
      return "mixed";
    case WordClass::Inadmissible:
      return "inadmissible";
  }
  return "?";
}

WordClass classify(const AlphabetParams& p, const Word& w) {
  ReducedForm r = reduce(p, w);
  if (r.zero) return WordClass::Inadmissible;
  if (r.closers.empty() && r.openers.empty()) return WordClass::Neutral;
  if (r.closers.empty()) return WordClass::Negative;
  if (r.openers.empty()) return WordClass::Positive;
  return WordClass::Mixed;
}

std::vector<int> height_profile(const Word& w) {
  std::vector<int> h(w.size() + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i) h[i + 1] = h[i] + height_step(w[i]);
  return h;
}

int drift(const Word& w) {
  int d = 0;
  for (const Symbol& s : w) d += height_step(s);
  return d;
}

}  // namespace dyckm
