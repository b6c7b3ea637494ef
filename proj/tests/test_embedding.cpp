#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "dyckm/embedding.hpp"
#include "dyckm/periodic.hpp"
#include "dyckm/reduce.hpp"
#include "dyckm/rng.hpp"

using namespace dyckm;

namespace {

const AlphabetParams P21{2, 1};

PeriodicPoint pp(Ambient amb, const std::string& block) {
  return PeriodicPoint(P21, amb, parse_word(P21, amb, block));
}

std::string block_of(const PeriodicPoint& x) { return word_to_string(x.block()); }

// Every block of length n over an ambient alphabet, as candidate periodic
// points. Inadmissible blocks are skipped.
template <typename F>
void for_each_point(Ambient amb, int max_period, F&& f) {
  auto alphabet = ambient_alphabet(P21, amb);
  for (int n = 1; n <= max_period; ++n) {
    std::vector<int> idx(n, 0);
    for (;;) {
      Word w;
      for (int i : idx) w.push_back(alphabet[i]);
      bool ok = true;
      if (amb == Ambient::SigmaD) ok = periodic_admissible(P21, w);
      if (ok) f(PeriodicPoint(P21, amb, w));
      int pos = n - 1;
      while (pos >= 0 && ++idx[pos] == static_cast<int>(alphabet.size())) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
}

// Periodically admissible block sampler: tracks the bracket stack so closers
// always match, then accepts only blocks whose square still reduces.
Word random_admissible_block(SeededRng& rng, int n) {
  for (;;) {
    Word w;
    std::vector<int> stack;
    for (int i = 0; i < n; ++i) {
      int pick = rng.draw_uniform(stack.empty() ? 3 : 4);
      if (pick == 0 || pick == 1) {
        int k = 1 + rng.draw_uniform(2);
        w.push_back(left_bracket(k));
        stack.push_back(k);
      } else if (pick == 2) {
        w.push_back(unit(1));
      } else {
        w.push_back(right_bracket(stack.back()));
        stack.pop_back();
      }
    }
    if (periodic_admissible(P21, w)) return w;
  }
}

}  // namespace

TEST_CASE("collapse forgets bracket indices on one side") {
  PeriodicPoint x = pp(Ambient::SigmaD, "A1 A2 B2 B1");
  CHECK(block_of(collapse(Gamma::Alpha, x)) == "A1 A2 B* B*");
  CHECK(block_of(collapse(Gamma::Beta, x)) == "A* A* B2 B1");
  CHECK(block_of(collapse(Gamma::Alpha, pp(Ambient::SigmaD, "A2 B2"))) == "A2 B*");
  CHECK(block_of(collapse(Gamma::Beta, pp(Ambient::SigmaD, "A2 B2"))) == "A* B2");

  // canonicalization happens after collapsing
  CHECK(block_of(collapse(Gamma::Alpha, pp(Ambient::SigmaD, "B1 U1"))) == "U1 B*");
  CHECK(collapse(Gamma::Alpha, pp(Ambient::SigmaD, "A1 B1")).ambient() == Ambient::SigmaAlpha);
  CHECK(collapse(Gamma::Beta, pp(Ambient::SigmaD, "A1 B1")).ambient() == Ambient::SigmaBeta);

  CHECK(symbol_token(collapse_symbol(Gamma::Alpha, right_bracket(2))) == "B*");
  CHECK(symbol_token(collapse_symbol(Gamma::Alpha, left_bracket(2))) == "A2");
  CHECK(symbol_token(collapse_symbol(Gamma::Beta, left_bracket(2))) == "A*");
}

TEST_CASE("embedding domain is a drift sign condition") {
  CHECK(in_domain(Gamma::Alpha, pp(Ambient::SigmaD, "A1 B1")));
  CHECK(in_domain(Gamma::Alpha, pp(Ambient::SigmaD, "A1")));
  CHECK_FALSE(in_domain(Gamma::Beta, pp(Ambient::SigmaD, "A1")));
  CHECK_FALSE(in_domain(Gamma::Alpha, pp(Ambient::SigmaD, "B2 A2 B2")));  // drift -1
  CHECK(in_domain(Gamma::Beta, pp(Ambient::SigmaD, "B2 A2 B2")));
  CHECK_FALSE(in_domain(Gamma::Alpha, pp(Ambient::SigmaD, "B1")));
  CHECK(in_domain(Gamma::Alpha, pp(Ambient::SigmaD, "U1")));
  CHECK(in_domain(Gamma::Beta, pp(Ambient::SigmaD, "U1")));
}

TEST_CASE("image membership mirrors the domain on the collapsed side") {
  CHECK(in_image(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A1 B*")));
  CHECK_FALSE(in_image(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A1 B* B*")));
  CHECK(in_image(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A1 A2 B*")));
  CHECK(in_image(Gamma::Beta, pp(Ambient::SigmaBeta, "A* B1")));
  CHECK_FALSE(in_image(Gamma::Beta, pp(Ambient::SigmaBeta, "A* A* B1")));
}

TEST_CASE("matched positions pair collapsed brackets with their openers") {
  PeriodicPoint y = pp(Ambient::SigmaAlpha, "A1 B*");
  MatchResult m = match_position(Gamma::Alpha, y, 1);
  CHECK(m.position == 1);
  CHECK(m.partner == 0);
  CHECK(symbol_token(m.partner_symbol) == "A1");
  // partners commute with the period shift
  MatchResult m2 = match_position(Gamma::Alpha, y, 3);
  CHECK(m2.partner == 2);

  PeriodicPoint nest = pp(Ambient::SigmaAlpha, "A1 A2 B* B*");
  CHECK(match_position(Gamma::Alpha, nest, 2).partner == 1);
  CHECK(symbol_token(match_position(Gamma::Alpha, nest, 2).partner_symbol) == "A2");
  CHECK(match_position(Gamma::Alpha, nest, 3).partner == 0);
  CHECK(symbol_token(match_position(Gamma::Alpha, nest, 3).partner_symbol) == "A1");

  // the partner may sit in the previous period
  PeriodicPoint wrap = pp(Ambient::SigmaAlpha, "A1 B* B* A2");
  MatchResult mw = match_position(Gamma::Alpha, wrap, 2);
  CHECK(mw.partner == -1);
  CHECK(symbol_token(mw.partner_symbol) == "A2");

  PeriodicPoint z = pp(Ambient::SigmaBeta, "A* B1");
  MatchResult mb = match_position(Gamma::Beta, z, 0);
  CHECK(mb.partner == 1);
  CHECK(symbol_token(mb.partner_symbol) == "B1");

  CHECK_THROWS_AS(match_position(Gamma::Alpha, y, 0), std::invalid_argument);
  CHECK_THROWS_AS(match_position(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A1 B* B*"), 1),
                  std::invalid_argument);
}

TEST_CASE("reconstruction restores indices from partner brackets") {
  CHECK(block_of(reconstruct(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A2 B*"))) == "A2 B2");
  CHECK(block_of(reconstruct(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A1 A2 B* B*"))) ==
        "A1 A2 B2 B1");
  CHECK(block_of(reconstruct(Gamma::Beta, pp(Ambient::SigmaBeta, "A* B1"))) == "A1 B1");
  CHECK(block_of(reconstruct(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A1 B* B* A2"))) ==
        "A1 B1 B2 A2");
  CHECK(block_of(reconstruct(Gamma::Alpha, pp(Ambient::SigmaAlpha, "U1"))) == "U1");
  CHECK(reconstruct(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A2 B*")).ambient() ==
        Ambient::SigmaD);

  CHECK_THROWS_AS(reconstruct(Gamma::Alpha, pp(Ambient::SigmaAlpha, "A1 B* B*")),
                  std::invalid_argument);
}

TEST_CASE("collapse and reconstruction invert each other exhaustively") {
  for (Gamma g : {Gamma::Alpha, Gamma::Beta}) {
    long checked = 0;
    for_each_point(Ambient::SigmaD, 5, [&](const PeriodicPoint& x) {
      if (!in_domain(g, x)) return;
      PeriodicPoint y = collapse(g, x);
      REQUIRE(in_image(g, y));
      REQUIRE(reconstruct(g, y) == x);
      ++checked;
    });
    REQUIRE(checked > 100);

    Ambient amb = g == Gamma::Alpha ? Ambient::SigmaAlpha : Ambient::SigmaBeta;
    for_each_point(amb, 5, [&](const PeriodicPoint& y) {
      if (!in_image(g, y)) return;
      PeriodicPoint x = reconstruct(g, y);
      REQUIRE(in_domain(g, x));
      REQUIRE(collapse(g, x) == y);
    });
  }
}

TEST_CASE("domain membership follows the orbit class") {
  for_each_point(Ambient::SigmaD, 5, [&](const PeriodicPoint& x) {
    WordClass c = periodic_class(x);
    if (c == WordClass::Neutral) {
      REQUIRE(in_domain(Gamma::Alpha, x));
      REQUIRE(in_domain(Gamma::Beta, x));
    } else if (c == WordClass::Negative) {
      REQUIRE(in_domain(Gamma::Alpha, x));
      REQUIRE_FALSE(in_domain(Gamma::Beta, x));
    } else {
      REQUIRE(in_domain(Gamma::Beta, x));
      REQUIRE_FALSE(in_domain(Gamma::Alpha, x));
    }
  });
}

TEST_CASE("long random orbits round trip") {
  SeededRng rng(2718);
  int alpha_side = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Word block = random_admissible_block(rng, 2 + rng.draw_uniform(13));
    PeriodicPoint x(P21, Ambient::SigmaD, block);
    for (Gamma g : {Gamma::Alpha, Gamma::Beta}) {
      if (!in_domain(g, x)) continue;
      if (g == Gamma::Alpha) ++alpha_side;
      PeriodicPoint y = collapse(g, x);
      REQUIRE(in_image(g, y));
      REQUIRE(reconstruct(g, y) == x);
    }
  }
  REQUIRE(alpha_side > 500);  // the sampler actually exercises the map
}
