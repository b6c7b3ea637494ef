#ifndef DYCKM_PATH_HPP
#define DYCKM_PATH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dyckm/measure.hpp"

namespace dyckm {

// Kernel interpolation between two distinct periodic-orbit measures on a full
// shift: P_t = row-normalize[(1-t) Q0 + t Q1 + leak * t(1-t) U], Qi the
// cyclic transition kernel of orbit i (zero rows off its support), U the
// uniform kernel. Endpoints evaluate to the orbit measures themselves;
// interior points are strictly positive Markov measures, rational in rational
// t. The leak weight bounds how far the interior bulges away from the
// endpoint orbits, so narrow path segments pass a small leak to keep their
// weak* diameter comparable to their endpoint distance.
class Segment {
 public:
  explicit Segment(PeriodicPoint from, PeriodicPoint to, Rat leak = Rat(1));

  const PeriodicPoint& from() const { return from_; }
  const PeriodicPoint& to() const { return to_; }

  // Measure on the full shift at time t in [0,1].
  MeasureSpec eval(const Rat& t) const;

 private:
  PeriodicPoint from_, to_;
  Rat leak_;
  std::vector<std::vector<Rat>> q0_, q1_;  // cyclic kernels
};

// Carries a full-shift segment to SigmaD through the index reconstruction:
// knots become reconstructed periodic-orbit measures (exact), interior points
// become pushforwards. Every evaluation checks the strict transport condition
// and throws transport_error naming t on violation (knots only need the
// nonstrict image condition).
MeasureSpec transport_segment(Gamma gamma, const Segment& seg, const Rat& t);

struct PathConfig {
  int depth = 6;         // number of approximants per side
  int q_offset = 1;      // approximation rate requirement d < 1/(n+q)
  int chain_knots = 2;   // interior knots of the central chain
  int rate_len = 2;      // metric truncation used for the rate check
  int budget_cap = 512;  // period cap while searching for approximants
  std::uint64_t seed = 20240817;
};

// A weak*-continuous path between two measures on SigmaD, built from
// approximant orbits on the dyadic tails and a central chain of orbit
// segments. Enough data is stored to re-evaluate any point exactly.
struct PathSpec {
  AlphabetParams params;
  Gamma gamma = Gamma::Alpha;
  MeasureSpec mu_plus, mu_minus;
  std::vector<PeriodicPoint> plus_blocks;   // approximants of mu_plus on SigmaD, n = 1..depth
  std::vector<PeriodicPoint> minus_blocks;  // approximants of mu_minus
  std::vector<PeriodicPoint> chain_blocks;  // collapsed-side chain, first = collapse of
                                            // plus_blocks[0], last = collapse of minus_blocks[0]
  PathConfig config;
};

// Builds the path: approximant sequences satisfying the rate requirement
// d(collapsed approximant, collapsed endpoint) < 1/(n + q), each strictly
// closer than the one before it and pairwise distinct, then the central
// chain. Endpoints must live on SigmaD, be distinct, and classify as Zero or
// the gamma-side class.
PathSpec build_path(const MeasureSpec& mu_plus, const MeasureSpec& mu_minus, Gamma gamma,
                    const PathConfig& cfg = {});

// Exact evaluation of the path at rational t in [0,1]. t = 0 / 1 return the
// endpoints; dyadic interval [2^{-n-2}, 2^{-n-1}] runs plus-segment n from
// approximant n+1 (left end) up to approximant n (right end); [1/4, 3/4]
// traverses the central chain; the minus side mirrors on [1 - 2^{-n-1},
// 1 - 2^{-n-2}]. Times below the deepest built interval evaluate to the
// deepest approximant.
MeasureSpec path_point(const PathSpec& path, const Rat& t);

// Schedule times at which the path passes stored orbit measures (segment ends
// and chain knots), in increasing order, endpoints included.
std::vector<Rat> path_knots(const PathSpec& path);

struct PathSample {
  Rat t;
  MeasureClass cls;
  double entropy = 0;
  double probe_integral = 0;
  double gap_to_prev = 0;  // weak* distance to the previous grid point
  bool fully_supported = false;
  bool is_knot = false;
};

struct PathReport {
  std::vector<PathSample> samples;
  double max_gap = 0;
  double min_pairwise = 0;  // smallest distance between distinct grid points
  bool pairwise_distinct = false;
};

// Samples the path on a uniform grid and reports per-point class, entropy,
// probe integral, adjacent gaps (metric truncated at max_len), full-support
// flags, and pairwise distinctness of the grid points.
PathReport verify_path(const PathSpec& path, int grid_points, int max_len,
                       const LocallyConstantFn* probe = nullptr);

}  // namespace dyckm

#endif
