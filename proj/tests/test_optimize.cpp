#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dyckm/errors.hpp"
#include "dyckm/measure.hpp"
#include "dyckm/optimize.hpp"

using namespace dyckm;

namespace {

const AlphabetParams P21{2, 1};

Word wd(const std::string& s) { return parse_word(P21, Ambient::SigmaD, s); }

PeriodicPoint pp(const std::string& block) {
  return PeriodicPoint(P21, Ambient::SigmaD, wd(block));
}

LocallyConstantFn ind(const std::string& w) {
  return indicator_fn(P21, Ambient::SigmaD, wd(w));
}

// Radius-0 drift observable: +1 on openers, -1 on closers, 0 on units.
LocallyConstantFn drift_fn() {
  std::map<std::string, Rat> table{{"A1", Rat(1)}, {"A2", Rat(1)},
                                   {"B1", Rat(-1)}, {"B2", Rat(-1)}};
  return LocallyConstantFn(P21, Ambient::SigmaD, 0, std::move(table), Rat(0));
}

// Exact cyclic mean of f along the orbit of the block.
Rat cyclic_mean(const LocallyConstantFn& f, const PeriodicPoint& x) {
  const int r = f.radius();
  Rat total(0);
  for (int i = 0; i < x.period(); ++i) {
    Word window;
    for (int j = i - r; j <= i + r; ++j) window.push_back(x.at(j));
    total += f.value(window);
  }
  return total / x.period();
}

// All periodically admissible orbits of period <= budget, canonical and
// deduplicated; the reference against which the optimizer is checked.
std::vector<PeriodicPoint> all_orbits(int budget) {
  std::set<std::string> seen;
  std::vector<PeriodicPoint> out;
  auto alphabet = ambient_alphabet(P21, Ambient::SigmaD);
  for (int n = 1; n <= budget; ++n) {
    std::vector<int> idx(n, 0);
    for (;;) {
      Word w;
      for (int i : idx) w.push_back(alphabet[i]);
      if (periodic_admissible(P21, w)) {
        PeriodicPoint x(P21, Ambient::SigmaD, w);
        if (seen.insert(periodic_to_string(x)).second) out.push_back(std::move(x));
      }
      int pos = n - 1;
      while (pos >= 0 && ++idx[pos] == static_cast<int>(alphabet.size())) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("optimal orbit means of short indicators") {
  OptimizeResult unit = lambda_periodic(ind("U1"), 4);
  CHECK(unit.value == Rat(1));
  REQUIRE(unit.witnesses.size() == 1);
  CHECK(unit.witnesses[0] == pp("U1"));
  CHECK_FALSE(unit.witnesses_truncated);
  CHECK(unit.upper_bound == Rat(1));

  for (int budget = 2; budget <= 6; ++budget) {
    OptimizeResult r = lambda_periodic(ind("A1 B1"), budget);
    REQUIRE(r.value == Rat(1, 2));
    REQUIRE(r.witnesses.size() == 1);
    REQUIRE(r.witnesses[0] == pp("A1 B1"));
  }

  // matching the probe at the optimum and tolerance zero returns the same set
  std::vector<PeriodicPoint> probe =
      maximizer_probe(ind("A1 B1"), 6, Rat(1, 2), Rat(0));
  REQUIRE(probe.size() == 1);
  CHECK(probe[0] == pp("A1 B1"));
}

TEST_CASE("the drift observable is maximized by every all-opener orbit") {
  OptimizeResult r = lambda_periodic(drift_fn(), 6);
  CHECK(r.value == Rat(1));
  CHECK_FALSE(r.witnesses_truncated);
  // one witness per primitive cyclic word over the two openers: 2 of period
  // 1, then 1, 2, 3, 6, 9 up to period 6
  CHECK(r.witnesses.size() == 23);
  CHECK(std::find(r.witnesses.begin(), r.witnesses.end(), pp("A1")) != r.witnesses.end());
  CHECK(std::find(r.witnesses.begin(), r.witnesses.end(), pp("A2")) != r.witnesses.end());
  for (const PeriodicPoint& x : r.witnesses) REQUIRE(cyclic_mean(drift_fn(), x) == Rat(1));

  OptimizeConfig few;
  few.max_witnesses = 5;
  OptimizeResult t = lambda_periodic(drift_fn(), 6, few);
  CHECK(t.value == Rat(1));
  CHECK(t.witnesses.size() == 5);
  CHECK(t.witnesses_truncated);
}

TEST_CASE("optimizer agrees with brute force on all short indicators") {
  const int budget = 5;
  std::vector<PeriodicPoint> orbits = all_orbits(budget);
  for (int len = 1; len <= 2; ++len) {
    auto alphabet = ambient_alphabet(P21, Ambient::SigmaD);
    std::vector<int> idx(len, 0);
    for (;;) {
      Word w;
      for (int i : idx) w.push_back(alphabet[i]);
      if (is_admissible(P21, w)) {
        LocallyConstantFn f = indicator_fn(P21, Ambient::SigmaD, w);
        Rat best(-1);
        std::vector<std::string> best_orbits;
        for (const PeriodicPoint& x : orbits) {
          Rat m = cyclic_mean(f, x);
          if (m > best) {
            best = m;
            best_orbits.clear();
          }
          if (m == best) best_orbits.push_back(periodic_to_string(x));
        }
        OptimizeConfig wide;
        wide.max_witnesses = 100000;
        OptimizeResult r = lambda_periodic(f, budget, wide);
        REQUIRE(r.value == best);
        REQUIRE_FALSE(r.witnesses_truncated);
        std::vector<std::string> got;
        for (const PeriodicPoint& x : r.witnesses) got.push_back(periodic_to_string(x));
        std::sort(best_orbits.begin(), best_orbits.end());
        std::sort(got.begin(), got.end());
        REQUIRE(got == best_orbits);
      }
      int pos = len - 1;
      while (pos >= 0 && ++idx[pos] == static_cast<int>(alphabet.size())) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
}

TEST_CASE("degenerate observables pin prescribed optimal orbits") {
  std::vector<PeriodicPoint> targets{pp("A1"), pp("A2")};
  LocallyConstantFn f = degenerate_fn(targets, 0);
  OptimizeResult r = lambda_periodic(f, 4);
  CHECK(r.value == Rat(0));
  CHECK(r.witnesses.size() >= 2);
  for (const PeriodicPoint& x : targets)
    CHECK(std::find(r.witnesses.begin(), r.witnesses.end(), x) != r.witnesses.end());

  // radius 0 windows over two openers: every mixed opener orbit also scores 0
  std::vector<PeriodicPoint> probe = maximizer_probe(f, 4, Rat(0), Rat(0));
  CHECK(probe.size() == 8);  // primitive cyclic words over {A1, A2}, period <= 4

  LocallyConstantFn g = degenerate_fn({pp("A1 B1")}, 1);
  OptimizeResult rg = lambda_periodic(g, 4);
  CHECK(rg.value == Rat(0));
  REQUIRE(rg.witnesses.size() == 1);
  CHECK(rg.witnesses[0] == pp("A1 B1"));

  OptimizeResult ru = lambda_periodic(degenerate_fn({pp("U1")}, 0), 3);
  CHECK(ru.value == Rat(0));
  REQUIRE(ru.witnesses.size() == 1);
  CHECK(ru.witnesses[0] == pp("U1"));

  CHECK_THROWS_AS(degenerate_fn({}, 0), std::invalid_argument);
}

TEST_CASE("invariant measures lower-bound the optimum") {
  MeasureSpec mme = MeasureSpec::pushforward(
      Gamma::Alpha, MeasureSpec::uniform(P21, Ambient::SigmaAlpha));
  ProbValue lower = lambda_markov_lower(ind("A1"), mme);
  CHECK(lower.exact == Rat(1, 4));
  CHECK(lower.exact <= lambda_periodic(ind("A1"), 4).value);

  LocallyConstantFn c(P21, Ambient::SigmaD, 0, {}, Rat(3, 7));
  CHECK(lambda_markov_lower(c, mme).exact == Rat(3, 7));
  CHECK(lambda_periodic(c, 3).value == Rat(3, 7));

  // indicator of an inadmissible word: no orbit and no window sees it
  OptimizeResult dead = lambda_periodic(ind("A1 B2"), 4);
  CHECK(dead.value == Rat(0));
  CHECK(dead.upper_bound == Rat(0));
  CHECK(lambda_markov_lower(ind("A1 B2"), mme).exact == Rat(0));
}

TEST_CASE("depth caps trade completeness for state count") {
  OptimizeConfig flat;
  flat.depth_cap = 0;
  // no stack means no matched pop is ever admissible, so the bracket pair
  // never completes
  CHECK(lambda_periodic(ind("A1 B1"), 4, flat).value == Rat(0));

  OptimizeConfig one;
  one.depth_cap = 1;
  CHECK(lambda_periodic(ind("A1 B1"), 4, one).value == Rat(1, 2));

  Rat prev(-1);
  for (int cap = 0; cap <= 3; ++cap) {
    OptimizeConfig cfg;
    cfg.depth_cap = cap;
    Rat v = lambda_periodic(ind("A1 A2 B2 B1"), 6, cfg).value;
    REQUIRE(v >= prev);
    prev = v;
  }
  CHECK(prev == Rat(1, 4));
}

TEST_CASE("budgets and resources are enforced") {
  CHECK_THROWS_AS(lambda_periodic(ind("A1 B1"), 0), std::invalid_argument);

  OptimizeConfig tiny;
  tiny.max_states = 2;
  CHECK_THROWS_AS(lambda_periodic(ind("A1 B1"), 6, tiny), resource_error);

  // budget 1 sees only fixed points
  OptimizeResult r = lambda_periodic(ind("A1 B1"), 1);
  CHECK(r.value == Rat(0));

  // the optimum is monotone in the period budget
  Rat prev(-1);
  for (int budget = 1; budget <= 6; ++budget) {
    Rat v = lambda_periodic(ind("A1 U1 B1"), budget).value;
    REQUIRE(v >= prev);
    prev = v;
  }
  CHECK(prev == Rat(1, 3));
}
