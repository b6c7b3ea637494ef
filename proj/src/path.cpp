#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyckm/embedding.hpp"
#include "dyckm/errors.hpp"
#include "dyckm/path.hpp"

namespace dyckm {

namespace {

Rat dyadic(int k) {  // 2^{-k}
  if (k < 0 || k > 60) throw std::invalid_argument("dyadic exponent out of range");
  return Rat(1, 1UL << k);
}

std::vector<std::vector<Rat>> cyclic_kernel(const AlphabetParams& p,
                                            const PeriodicPoint& x) {
  const std::size_t s = ambient_alphabet(p, x.ambient()).size();
  std::vector<std::vector<Rat>> kernel(s, std::vector<Rat>(s, Rat(0)));
  std::vector<long> occ(s, 0);
  const int period = x.period();
  for (int i = 0; i < period; ++i) {
    const int a = symbol_rank(p, x.ambient(), x.at(i));
    const int b = symbol_rank(p, x.ambient(), x.at(i + 1));
    kernel[a][b] += 1;
    ++occ[a];
  }
  for (std::size_t a = 0; a < s; ++a)
    if (occ[a] > 0)
      for (std::size_t b = 0; b < s; ++b) kernel[a][b] /= occ[a];
  return kernel;
}

}  // namespace

Segment::Segment(PeriodicPoint from, PeriodicPoint to, Rat leak)
    : from_(std::move(from)), to_(std::move(to)), leak_(std::move(leak)) {
  leak_.canonicalize();  // callers may hand over a raw p/q pair
  if (!(from_.params() == to_.params()) || from_.ambient() != to_.ambient())
    throw std::invalid_argument("segment endpoints live on different shifts");
  if (from_.ambient() == Ambient::SigmaD)
    throw std::invalid_argument("segment endpoints must live on a collapsed full shift");
  if (from_ == to_)
    throw std::invalid_argument("segment endpoints must be distinct orbits");
  if (sgn(leak_) <= 0 || leak_ > 1)
    throw std::invalid_argument("segment leak weight must be in (0, 1]");
  q0_ = cyclic_kernel(from_.params(), from_);
  q1_ = cyclic_kernel(to_.params(), to_);
}

MeasureSpec Segment::eval(const Rat& t_in) const {
  Rat t = t_in;
  t.canonicalize();  // callers may hand over a raw p/q pair
  if (sgn(t) < 0 || t > 1)
    throw std::invalid_argument("segment time outside [0,1]");
  if (sgn(t) == 0) return MeasureSpec::co(from_);
  if (t == 1) return MeasureSpec::co(to_);
  const AlphabetParams& p = from_.params();
  const std::size_t s = q0_.size();
  // Rows of zero-support states still get the uniform leak, so every entry of
  // the normalized kernel is strictly positive and the chain is mixing.
  const Rat leak = leak_ * t * (1 - t);
  std::vector<std::vector<Rat>> kernel(s, std::vector<Rat>(s, Rat(0)));
  for (std::size_t a = 0; a < s; ++a) {
    Rat row_sum(0);
    for (std::size_t b = 0; b < s; ++b) {
      kernel[a][b] = (1 - t) * q0_[a][b] + t * q1_[a][b] + leak / static_cast<long>(s);
      row_sum += kernel[a][b];
    }
    for (std::size_t b = 0; b < s; ++b) kernel[a][b] /= row_sum;
  }
  return MeasureSpec::markov(p, from_.ambient(), std::move(kernel));
}

MeasureSpec transport_segment(Gamma gamma, const Segment& seg, const Rat& t) {
  try {
    return MeasureSpec::pushforward(gamma, seg.eval(t));
  } catch (const transport_error& e) {
    throw transport_error(e.what(), "t=" + rational_to_string(t));
  }
}

namespace {

// Collapsed shadow of a path endpoint: the side against which the
// approximation rate is measured.
MeasureSpec collapsed_target(const MeasureSpec& mu, Gamma gamma) {
  const AlphabetParams& p = mu.params();
  const Ambient amb = collapsed_ambient(gamma);
  if (mu.is_pushforward()) {
    if (mu.as_pushforward().gamma != gamma)
      throw std::invalid_argument("endpoint was transported through the other side");
    return *mu.as_pushforward().inner;
  }
  if (mu.is_co()) return MeasureSpec::co(collapse(gamma, mu.as_co().point));
  if (mu.is_bernoulli()) {
    const BernoulliSpec& b = mu.as_bernoulli();
    const std::vector<Symbol> from = ambient_alphabet(p, Ambient::SigmaD);
    const std::vector<Symbol> to = ambient_alphabet(p, amb);
    std::vector<Rat> weights(to.size(), Rat(0));
    for (std::size_t i = 0; i < from.size(); ++i) {
      const Symbol c = collapse_symbol(gamma, from[i]);
      weights[symbol_rank(p, amb, c)] += b.weights[i];
    }
    return MeasureSpec::bernoulli(p, amb, std::move(weights));
  }
  // Collapsing a Markov kernel needs row merging that is not well-defined in
  // general; paths start from CO, Bernoulli, or already-transported endpoints.
  throw std::invalid_argument("markov endpoints on sigma_d are not supported");
}

bool rate_ok(const WeakStarResult& d, const Rat& rate) {
  if (d.is_exact) return d.exact < rate;
  return d.value + d.error < to_double(rate);
}

struct ApproximantBuilder {
  const AlphabetParams& p;
  Gamma gamma;
  const MeasureSpec& target;
  const MeasureSpec collapsed;
  const PathConfig& cfg;
  std::uint64_t seed;
  std::vector<PeriodicPoint> used;
  WeakStarResult prev{};  // distance of the previous pick
  bool has_prev = false;

  WeakStarResult collapsed_distance(const PeriodicPoint& x) const {
    return weakstar_distance(MeasureSpec::co(collapse(gamma, x)), collapsed,
                             cfg.rate_len);
  }

  bool is_used(const PeriodicPoint& x) const {
    return std::find(used.begin(), used.end(), x) != used.end();
  }

  // Commits x when it is new, within the rate, and (in strict mode) strictly
  // closer than the previous pick; the strict decrease keeps knot-to-knot
  // gaps shrinking down the dyadic tail. Callers relax strictness only after
  // a full strict search fails, which happens once the approximants sit so
  // close to the target that padding cannot improve on them.
  bool try_pick(const PeriodicPoint& x, const Rat& rate, bool strict) {
    if (is_used(x)) return false;
    WeakStarResult d = collapsed_distance(x);
    if (!rate_ok(d, rate)) return false;
    if (strict && has_prev) {
      const bool closer = (d.is_exact && prev.is_exact)
                              ? d.exact < prev.exact
                              : d.value + d.error < prev.value - prev.error;
      if (!closer) return false;
    }
    used.push_back(x);
    prev = d;
    has_prev = true;
    return true;
  }

  // Tries powers of a base block plus a small bracket pad. The pad keeps the
  // reduced form of the base (a neutral pair cancels away), so admissibility
  // and the class are preserved; for a drift-zero base an even power with one
  // extra opener (closer for the beta side) tips it onto the gamma side.
  // Returns false once the power overflows the period budget.
  bool padded_search(const Word& base, bool base_neutral, const Rat& rate, bool strict) {
    Word pad;
    if (base_neutral) {
      pad.push_back(gamma == Gamma::Alpha ? left_bracket(1) : right_bracket(1));
    } else {
      pad.push_back(left_bracket(1));
      pad.push_back(right_bracket(1));
    }
    for (int m = base_neutral ? 2 : 1;; m *= 2) {
      if (m * static_cast<long long>(base.size()) + static_cast<long long>(pad.size()) >
          cfg.budget_cap)
        return false;
      Word block;
      for (int i = 0; i < m; ++i) block.insert(block.end(), base.begin(), base.end());
      block.insert(block.end(), pad.begin(), pad.end());
      if (try_pick(PeriodicPoint(p, Ambient::SigmaD, block), rate, strict)) return true;
    }
  }

  bool search(int n, const Rat& rate, bool strict) {
    if (target.is_co()) {
      const PeriodicPoint& base = target.as_co().point;
      return try_pick(base, rate, strict) ||
             padded_search(base.block(),
                           periodic_class(base) == WordClass::Neutral, rate, strict);
    }
    for (int budget = 8; budget <= cfg.budget_cap; budget *= 2) {
      MeasureSpec cand = co_approx(target, budget, seed);
      const PeriodicPoint& base = cand.as_co().point;
      if (try_pick(base, rate, strict) ||
          padded_search(base.block(),
                        periodic_class(base) == WordClass::Neutral, rate, strict))
        return true;
    }
    return false;
  }

  PeriodicPoint next(int n) {
    const Rat rate(1, n + cfg.q_offset);
    if (search(n, rate, true) || search(n, rate, false)) return used.back();
    throw budget_error("path approximant budget exhausted at rate 1/" +
                       std::to_string(n + cfg.q_offset));
  }
};

}  // namespace

PathSpec build_path(const MeasureSpec& mu_plus, const MeasureSpec& mu_minus,
                    Gamma gamma, const PathConfig& cfg) {
  if (!(mu_plus.params() == mu_minus.params()))
    throw std::invalid_argument("path endpoints share one alphabet");
  if (mu_plus.ambient() != Ambient::SigmaD || mu_minus.ambient() != Ambient::SigmaD)
    throw std::invalid_argument("path endpoints live on sigma_d");
  if (mu_plus == mu_minus)
    throw std::invalid_argument("path endpoints must be distinct");
  if (cfg.depth < 2 || cfg.depth > 24)
    throw std::invalid_argument("path depth must be in [2, 24]");
  if (cfg.chain_knots < 0 || cfg.q_offset < 0 || cfg.rate_len < 1 || cfg.budget_cap < 4)
    throw std::invalid_argument("bad path configuration");
  const MeasureClass side =
      gamma == Gamma::Alpha ? MeasureClass::Alpha : MeasureClass::Beta;
  for (const MeasureSpec* mu : {&mu_plus, &mu_minus}) {
    const MeasureClass c = classify_measure(*mu);
    if (c != side && c != MeasureClass::Zero)
      throw std::invalid_argument(
          "path endpoints must classify on the transported side or as drift zero");
  }

  const AlphabetParams& p = mu_plus.params();
  // An approximant may never reproduce an endpoint orbit or any orbit already
  // placed on the path: the verification grid hits all of them, and grid
  // points must stay pairwise distinct.
  std::vector<PeriodicPoint> reserved;
  if (mu_plus.is_co()) reserved.push_back(mu_plus.as_co().point);
  if (mu_minus.is_co()) reserved.push_back(mu_minus.as_co().point);
  ApproximantBuilder plus{p,  gamma, mu_plus, collapsed_target(mu_plus, gamma),
                          cfg, cfg.seed, reserved};
  std::vector<PeriodicPoint> plus_blocks, minus_blocks;
  for (int n = 1; n <= cfg.depth; ++n) plus_blocks.push_back(plus.next(n));
  ApproximantBuilder minus{p,   gamma, mu_minus, collapsed_target(mu_minus, gamma),
                           cfg, cfg.seed + 64, plus.used};
  for (int n = 1; n <= cfg.depth; ++n) minus_blocks.push_back(minus.next(n));

  // Central chain on the collapsed side: walk from the plus block to the
  // minus block through concatenated powers, dropping consecutive duplicates
  // (the ends stay distinct, so at least one segment survives).
  std::vector<PeriodicPoint> chain;
  const PeriodicPoint b_plus = collapse(gamma, plus_blocks.front());
  const PeriodicPoint b_minus = collapse(gamma, minus_blocks.front());
  chain.push_back(b_plus);
  for (int j = 1; j <= cfg.chain_knots; ++j) {
    Word block;
    for (int i = j; i <= cfg.chain_knots; ++i)
      block.insert(block.end(), b_plus.block().begin(), b_plus.block().end());
    for (int i = 1; i <= j; ++i)
      block.insert(block.end(), b_minus.block().begin(), b_minus.block().end());
    PeriodicPoint node(p, collapsed_ambient(gamma), block);
    if (!(node == chain.back()) && !(node == b_minus)) chain.push_back(node);
  }
  chain.push_back(b_minus);

  return PathSpec{p,           gamma,        mu_plus, mu_minus,
                  plus_blocks, minus_blocks, chain,   cfg};
}

MeasureSpec path_point(const PathSpec& path, const Rat& t_in) {
  Rat t = t_in;
  t.canonicalize();  // callers may hand over a raw p/q pair
  if (sgn(t) < 0 || t > 1)
    throw std::invalid_argument("path time outside [0,1]");
  if (sgn(t) == 0) return path.mu_plus;
  if (t == 1) return path.mu_minus;
  const int depth = static_cast<int>(path.plus_blocks.size());
  try {
    const Rat quarter(1, 4);
    const Rat floor_t = dyadic(depth + 1);
    if (t <= quarter || t >= 1 - quarter) {
      const bool plus_side = t <= quarter;
      const Rat s = plus_side ? t : 1 - t;
      const std::vector<PeriodicPoint>& blocks =
          plus_side ? path.plus_blocks : path.minus_blocks;
      if (s <= floor_t) return MeasureSpec::co(blocks[depth - 1]);
      // Deepest interval first: pick the largest n with s inside
      // [2^{-n-2}, 2^{-n-1}]; interval boundaries land on the shallower knot
      // either way.
      for (int n = depth - 1; n >= 1; --n) {
        const Rat left = dyadic(n + 2), right = dyadic(n + 1);
        if (s > right) continue;
        // Leak scaled to the segment width: deep-tail interiors hug their
        // knots, so refinement keeps shrinking the observed gaps.
        const Segment seg(collapse(path.gamma, blocks[n]),
                          collapse(path.gamma, blocks[n - 1]), dyadic(n + 2));
        return transport_segment(path.gamma, seg, (s - left) / (right - left));
      }
      throw std::logic_error("path schedule gap");  // covered: s in (floor, 1/4]
    }
    const std::size_t segments = path.chain_blocks.size() - 1;
    Rat pos = (t - quarter) * 2 * static_cast<long>(segments);
    // pos in (0, segments); pick the segment index by exact floor
    long j = static_cast<long>(mpz_class(pos.get_num() / pos.get_den()).get_si());
    if (j >= static_cast<long>(segments)) j = static_cast<long>(segments) - 1;
    const Segment seg(path.chain_blocks[j], path.chain_blocks[j + 1]);
    return transport_segment(path.gamma, seg, pos - j);
  } catch (const transport_error& e) {
    throw transport_error(e.what(), "t=" + rational_to_string(t));
  }
}

std::vector<Rat> path_knots(const PathSpec& path) {
  const int depth = static_cast<int>(path.plus_blocks.size());
  std::vector<Rat> knots;
  knots.push_back(Rat(0));
  for (int n = depth; n >= 1; --n) knots.push_back(dyadic(n + 1));
  const std::size_t segments = path.chain_blocks.size() - 1;
  for (std::size_t j = 1; j <= segments; ++j)
    knots.push_back(Rat(1, 4) + Rat(static_cast<long>(j), 2 * static_cast<long>(segments)));
  for (int n = 1; n <= depth; ++n) knots.push_back(1 - dyadic(n + 1));
  knots.push_back(Rat(1));
  for (Rat& q : knots) q.canonicalize();
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return knots;
}

PathReport verify_path(const PathSpec& path, int grid_points, int max_len,
                       const LocallyConstantFn* probe) {
  if (grid_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  const std::vector<Rat> knots = path_knots(path);
  const Rat tail = dyadic(static_cast<int>(path.plus_blocks.size()) + 1);

  PathReport report;
  std::vector<MeasureSpec> points;
  points.reserve(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    Rat t(i, grid_points - 1);
    t.canonicalize();
    points.push_back(path_point(path, t));
    PathSample s;
    s.t = t;
    s.cls = classify_measure(points.back());
    s.entropy = measure_entropy(points.back());
    if (probe) s.probe_integral = integral(points.back(), *probe).value;
    s.fully_supported = fully_supported(points.back(), 2);
    s.is_knot = std::binary_search(knots.begin(), knots.end(), t) ||
                (sgn(t) > 0 && t < tail) || (t < 1 && t > 1 - tail);
    report.samples.push_back(std::move(s));
  }
  for (int i = 1; i < grid_points; ++i) {
    const double gap =
        weakstar_distance(points[i - 1], points[i], max_len).value;
    report.samples[i].gap_to_prev = gap;
    report.max_gap = std::max(report.max_gap, gap);
  }
  report.pairwise_distinct = true;
  bool first_pair = true;
  for (int i = 0; i < grid_points; ++i) {
    for (int j = i + 1; j < grid_points; ++j) {
      const WeakStarResult d = weakstar_distance(points[i], points[j], max_len);
      const bool positive = d.is_exact ? sgn(d.exact) > 0 : d.value > d.error;
      if (!positive) report.pairwise_distinct = false;
      if (first_pair || d.value < report.min_pairwise) {
        report.min_pairwise = d.value;
        first_pair = false;
      }
    }
  }
  return report;
}

}  // namespace dyckm
