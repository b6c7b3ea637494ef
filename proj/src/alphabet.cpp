#include "dyckm/alphabet.hpp"

#include <sstream>
#include <stdexcept>

namespace dyckm {

Ambient collapsed_ambient(Gamma gamma) {
  return gamma == Gamma::Alpha ? Ambient::SigmaAlpha : Ambient::SigmaBeta;
}

Symbol left_bracket(int k) { return {SymbolKind::LeftBracket, k}; }
Symbol right_bracket(int k) { return {SymbolKind::RightBracket, k}; }
Symbol unit(int l) { return {SymbolKind::Unit, l}; }
Symbol collapsed_left() { return {SymbolKind::CollapsedLeft, 0}; }
Symbol collapsed_right() { return {SymbolKind::CollapsedRight, 0}; }

int height_step(const Symbol& s) {
  switch (s.kind) {
    case SymbolKind::LeftBracket:
    case SymbolKind::CollapsedLeft:
      return 1;
    case SymbolKind::Unit:
      return 0;
    case SymbolKind::RightBracket:
    case SymbolKind::CollapsedRight:
      return -1;
  }
  return 0;
}

bool is_opening(const Symbol& s) { return height_step(s) == 1; }
bool is_closing(const Symbol& s) { return height_step(s) == -1; }

std::vector<Symbol> ambient_alphabet(const AlphabetParams& p, Ambient ambient) {
  if (p.M < 1 || p.N < 0) throw std::invalid_argument("alphabet needs M >= 1, N >= 0");
  std::vector<Symbol> out;
  if (ambient == Ambient::SigmaBeta)
    out.push_back(collapsed_left());
  else
    for (int k = 1; k <= p.M; ++k) out.push_back(left_bracket(k));
  for (int l = 1; l <= p.N; ++l) out.push_back(unit(l));
  if (ambient == Ambient::SigmaAlpha)
    out.push_back(collapsed_right());
  else
    for (int k = 1; k <= p.M; ++k) out.push_back(right_bracket(k));
  return out;
}

int ambient_size(const AlphabetParams& p, Ambient ambient) {
  switch (ambient) {
    case Ambient::SigmaD:
      return 2 * p.M + p.N;
    default:
      return p.M + p.N + 1;
  }
}

bool symbol_in_ambient(const AlphabetParams& p, Ambient ambient, const Symbol& s) {
  switch (s.kind) {
    case SymbolKind::LeftBracket:
      return ambient != Ambient::SigmaBeta && s.index >= 1 && s.index <= p.M;
    case SymbolKind::RightBracket:
      return ambient != Ambient::SigmaAlpha && s.index >= 1 && s.index <= p.M;
    case SymbolKind::Unit:
      return s.index >= 1 && s.index <= p.N;
    case SymbolKind::CollapsedLeft:
      return ambient == Ambient::SigmaBeta;
    case SymbolKind::CollapsedRight:
      return ambient == Ambient::SigmaAlpha;
  }
  return false;
}

int symbol_rank(const AlphabetParams& p, Ambient ambient, const Symbol& s) {
  if (!symbol_in_ambient(p, ambient, s))
    throw std::invalid_argument("symbol " + symbol_token(s) + " not in " + ambient_name(ambient));
  int openers = ambient == Ambient::SigmaBeta ? 1 : p.M;
  switch (s.kind) {
    case SymbolKind::LeftBracket:
      return s.index - 1;
    case SymbolKind::CollapsedLeft:
      return 0;
    case SymbolKind::Unit:
      return openers + s.index - 1;
    case SymbolKind::RightBracket:
      return openers + p.N + s.index - 1;
    case SymbolKind::CollapsedRight:
      return openers + p.N;
  }
  return -1;
}

bool symbol_less(const AlphabetParams& p, Ambient ambient, const Symbol& a, const Symbol& b) {
  return symbol_rank(p, ambient, a) < symbol_rank(p, ambient, b);
}

std::string symbol_token(const Symbol& s) {
  switch (s.kind) {
    case SymbolKind::LeftBracket:
      return "A" + std::to_string(s.index);
    case SymbolKind::RightBracket:
      return "B" + std::to_string(s.index);
    case SymbolKind::Unit:
      return "U" + std::to_string(s.index);
    case SymbolKind::CollapsedLeft:
      return "A*";
    case SymbolKind::CollapsedRight:
      return "B*";
  }
  return "?";
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += symbol_token(w[i]);
  }
  return out;
}

Word parse_word(const AlphabetParams& p, Ambient ambient, const std::string& text) {
  Word out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    Symbol s;
    if (tok == "A*")
      s = collapsed_left();
    else if (tok == "B*")
      s = collapsed_right();
    else if (tok.size() >= 2 && (tok[0] == 'A' || tok[0] == 'B' || tok[0] == 'U')) {
      int idx = 0;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i] < '0' || tok[i] > '9') throw std::invalid_argument("bad token: " + tok);
        idx = idx * 10 + (tok[i] - '0');
      }
      SymbolKind kind = tok[0] == 'A'   ? SymbolKind::LeftBracket
                        : tok[0] == 'B' ? SymbolKind::RightBracket
                                        : SymbolKind::Unit;
      s = {kind, idx};
    } else {
      throw std::invalid_argument("bad token: " + tok);
    }
    if (!symbol_in_ambient(p, ambient, s))
      throw std::invalid_argument("token " + tok + " not in " + ambient_name(ambient) +
                                  " for M=" + std::to_string(p.M) + " N=" + std::to_string(p.N));
    out.push_back(s);
  }
  return out;
}

std::string ambient_name(Ambient a) {
  switch (a) {
    case Ambient::SigmaD:
      return "sigma_d";
    case Ambient::SigmaAlpha:
      return "sigma_alpha";
    case Ambient::SigmaBeta:
      return "sigma_beta";
  }
  return "?";
}

Ambient parse_ambient(const std::string& name) {
  if (name == "sigma_d") return Ambient::SigmaD;
  if (name == "sigma_alpha") return Ambient::SigmaAlpha;
  if (name == "sigma_beta") return Ambient::SigmaBeta;
  throw std::invalid_argument("unknown ambient: " + name);
}

std::string gamma_name(Gamma g) { return g == Gamma::Alpha ? "alpha" : "beta"; }

Gamma parse_gamma(const std::string& name) {
  if (name == "alpha") return Gamma::Alpha;
  if (name == "beta") return Gamma::Beta;
  throw std::invalid_argument("unknown side: " + name);
}

}  // namespace dyckm
