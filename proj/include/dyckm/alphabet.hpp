#ifndef DYCKM_ALPHABET_HPP
#define DYCKM_ALPHABET_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace dyckm {

// Alphabet geometry: M matched bracket pairs and N neutral unit symbols.
struct AlphabetParams {
  int M = 2;
  int N = 0;

  friend bool operator==(const AlphabetParams&, const AlphabetParams&) = default;
};

// The three shift spaces the toolkit works over. SigmaD carries indexed
// brackets on both sides; the two collapsed spaces are full shifts where one
// side has lost its indices.
enum class Ambient : std::uint8_t { SigmaD, SigmaAlpha, SigmaBeta };

// Which side gets collapsed by an embedding.
enum class Gamma : std::uint8_t { Alpha, Beta };

Ambient collapsed_ambient(Gamma gamma);

enum class SymbolKind : std::uint8_t {
  LeftBracket,    // A1..AM
  Unit,           // U1..UN
  RightBracket,   // B1..BM
  CollapsedLeft,  // A*  (only in SigmaBeta)
  CollapsedRight  // B*  (only in SigmaAlpha)
};

struct Symbol {
  SymbolKind kind = SymbolKind::Unit;
  int index = 0;  // 1-based for indexed kinds, 0 for collapsed

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

Symbol left_bracket(int k);
Symbol right_bracket(int k);
Symbol unit(int l);
Symbol collapsed_left();
Symbol collapsed_right();

// Height increment: +1 for opening symbols, 0 for units, -1 for closing.
int height_step(const Symbol& s);

bool is_opening(const Symbol& s);
bool is_closing(const Symbol& s);

using Word = std::vector<Symbol>;

// Symbols of an ambient alphabet in canonical order: openers by index, units,
// closers by index (collapsed symbols take the slot of the side they replace).
std::vector<Symbol> ambient_alphabet(const AlphabetParams& p, Ambient ambient);

int ambient_size(const AlphabetParams& p, Ambient ambient);

// Position of s in the canonical order; throws std::invalid_argument when s
// does not belong to the ambient alphabet.
int symbol_rank(const AlphabetParams& p, Ambient ambient, const Symbol& s);

bool symbol_in_ambient(const AlphabetParams& p, Ambient ambient, const Symbol& s);

// Canonical order comparison within one ambient.
bool symbol_less(const AlphabetParams& p, Ambient ambient, const Symbol& a, const Symbol& b);

std::string symbol_token(const Symbol& s);
std::string word_to_string(const Word& w);  // whitespace-joined tokens

// Parses a whitespace-separated token string ("A1 U2 B1"). Every token must
// belong to the ambient alphabet.
Word parse_word(const AlphabetParams& p, Ambient ambient, const std::string& text);

std::string ambient_name(Ambient a);
Ambient parse_ambient(const std::string& name);
std::string gamma_name(Gamma g);
Gamma parse_gamma(const std::string& name);

}  // namespace dyckm

#endif
