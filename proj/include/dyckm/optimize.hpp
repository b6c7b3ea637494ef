#ifndef DYCKM_OPTIMIZE_HPP
#define DYCKM_OPTIMIZE_HPP

#include <vector>

#include "dyckm/fn.hpp"
#include "dyckm/measure.hpp"
#include "dyckm/periodic.hpp"

namespace dyckm {

struct OptimizeConfig {
  int depth_cap = -1;        // open-bracket stack truncation; -1 means the period budget
  int max_states = 2000000;  // resource cap on the search graph
  int max_witnesses = 32;    // orbits reported before truncating
};

struct OptimizeResult {
  Rat value;                            // best cyclic mean over periods <= budget
  std::vector<PeriodicPoint> witnesses; // optimal orbits, canonical, lexicographic order
  bool witnesses_truncated = false;
  Rat upper_bound;                      // max of f over admissible windows
};

// Best periodic-orbit average of f over admissible orbits of period <= budget.
// Search graph: state = (truncated open-bracket stack, depth-overflow flag,
// last 2r symbols); an edge appends one symbol, enforcing index matching
// against the stack; cycles of the graph are exactly realizable orbits, and
// every orbit whose per-period excursion fits the depth cap appears. Exact
// rational cycle means via a bounded-length best-sum dynamic program.
OptimizeResult lambda_periodic(const LocallyConstantFn& f, int budget,
                               const OptimizeConfig& cfg = {});

// All orbits of period <= budget whose cyclic mean is within tol of value
// (exhaustive enumeration with admissibility pruning).
std::vector<PeriodicPoint> maximizer_probe(const LocallyConstantFn& f, int budget,
                                           const Rat& value, const Rat& tol,
                                           const OptimizeConfig& cfg = {});

// Observable that is 0 on every window occurring in one of the given orbits
// and -1 elsewhere: its optimal value is 0 and each listed orbit attains it.
LocallyConstantFn degenerate_fn(const std::vector<PeriodicPoint>& orbits, int radius);

// Lower bound for the optimum from any invariant measure: its integral.
ProbValue lambda_markov_lower(const LocallyConstantFn& f, const MeasureSpec& mu);

}  // namespace dyckm

#endif
