#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyckm/errors.hpp"
#include "dyckm/language.hpp"
#include "dyckm/measure.hpp"
#include "dyckm/reduce.hpp"

namespace dyckm {

namespace {

// The ranking functional is the truncated metric itself, with the target-side
// cylinder values computed once and shared across candidates.
struct RankTerm {
  Word w;
  ProbValue target;
  Rat weight;
};

std::vector<RankTerm> rank_terms(const MeasureSpec& target, int max_len) {
  std::vector<RankTerm> terms;
  Rat weight(1);
  const Rat half(1, 2);
  for (int n = 1; n <= max_len; ++n) {
    for_each_word(target.params(), n, [&](const Word& w) {
      weight *= half;
      terms.push_back({w, cylinder_prob(target, w), weight});
    });
  }
  return terms;
}

struct RankValue {
  Rat exact{0};
  double numeric = 0;
  bool is_exact = true;

  double value() const { return to_double(exact) + numeric; }
};

RankValue rank_distance(const std::vector<RankTerm>& terms, const MeasureSpec& cand) {
  RankValue rv;
  for (const RankTerm& t : terms) {
    const ProbValue a = cylinder_prob(cand, t.w);
    if (a.is_exact && t.target.is_exact) {
      Rat d = a.exact - t.target.exact;
      if (sgn(d) < 0) d = -d;
      rv.exact += d * t.weight;
    } else {
      rv.is_exact = false;
      rv.numeric += std::abs(a.value - t.target.value) * to_double(t.weight);
    }
  }
  return rv;
}

bool rank_less(const RankValue& a, const RankValue& b) {
  if (a.is_exact && b.is_exact) return a.exact < b.exact;
  return a.value() < b.value();
}

bool block_less(const AlphabetParams& p, const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int ra = symbol_rank(p, Ambient::SigmaD, a[i]);
    const int rb = symbol_rank(p, Ambient::SigmaD, b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

class CandidatePool {
 public:
  explicit CandidatePool(const AlphabetParams& p) : params_(p) {}

  void add(const Word& block) {
    PeriodicPoint x(params_, Ambient::SigmaD, block);
    const std::string key = word_to_string(x.block());
    if (seen_.insert(key).second) pool_.push_back(std::move(x));
  }

  std::vector<PeriodicPoint> sorted() {
    std::sort(pool_.begin(), pool_.end(),
              [&](const PeriodicPoint& a, const PeriodicPoint& b) {
                return block_less(params_, a.block(), b.block());
              });
    return pool_;
  }

  bool empty() const { return pool_.empty(); }

 private:
  AlphabetParams params_;
  std::set<std::string> seen_;
  std::vector<PeriodicPoint> pool_;
};

std::vector<int> heights(const Word& w) {
  std::vector<int> h(w.size() + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i) h[i + 1] = h[i] + height_step(w[i]);
  return h;
}

// Subwords whose height profile stays weakly above the start level and ends
// strictly higher: these reduce to a clean opener run, so their periodization
// is admissible. The mirrored scan collects the closer-run case.
void add_sign_subwords(CandidatePool& pool, const Word& seg, int budget,
                       bool opener_side) {
  const std::vector<int> h = heights(seg);
  const int len = static_cast<int>(seg.size());
  if (opener_side) {
    for (int s = 0; s < len; ++s) {
      for (int e = s + 1; e <= len && e - s <= budget; ++e) {
        if (h[e] < h[s]) break;  // dipped below the start level for good
        if (h[e] > h[s]) pool.add(Word(seg.begin() + s, seg.begin() + e));
      }
    }
  } else {
    for (int e = len; e > 0; --e) {
      for (int s = e - 1; s >= 0 && e - s <= budget; --s) {
        if (h[s] < h[e]) break;  // dipped below the end level for good
        if (h[s] > h[e]) pool.add(Word(seg.begin() + s, seg.begin() + e));
      }
    }
  }
}

// Neutral subwords: profile returns to the start level without dipping below.
void for_each_neutral_subword(const Word& seg, int max_len,
                              const std::function<void(const Word&)>& fn) {
  const std::vector<int> h = heights(seg);
  const int len = static_cast<int>(seg.size());
  for (int s = 0; s < len; ++s) {
    for (int e = s + 1; e <= len && e - s <= max_len; ++e) {
      if (h[e] < h[s]) break;
      if (h[e] == h[s]) fn(Word(seg.begin() + s, seg.begin() + e));
    }
  }
}

// Even powers of a neutral word with one extra opener: the paper's recipe for
// approaching a drift-zero target through strictly positive drift.
void add_neutral_powers(CandidatePool& pool, const AlphabetParams& p,
                        const Word& omega, int budget) {
  const int period = static_cast<int>(omega.size());
  for (int m = 2; m * period + 1 <= budget; m += 2) {
    Word block;
    block.reserve(m * period + 1);
    for (int i = 0; i < m; ++i) block.insert(block.end(), omega.begin(), omega.end());
    block.push_back(left_bracket(1));
    pool.add(block);
  }
}

}  // namespace

MeasureSpec co_approx(const MeasureSpec& target, int budget, std::uint64_t seed,
                      const CoApproxConfig& cfg) {
  if (target.ambient() != Ambient::SigmaD)
    throw std::invalid_argument("co_approx: target must live on sigma_d");
  if (budget < 1) throw std::invalid_argument("co_approx: period budget must be >= 1");

  const AlphabetParams& p = target.params();
  const MeasureClass cls = classify_measure(target);
  CandidatePool pool(p);

  if (cls == MeasureClass::Zero && target.is_co()) {
    // Rotate the target block to start right after its height minimum; that
    // rotation is neutral and feeds the powering recipe directly.
    const Word& block = target.as_co().point.block();
    const std::vector<int> h = heights(block);
    int cut = 0;
    for (std::size_t i = 1; i < block.size(); ++i)
      if (h[i] < h[cut]) cut = static_cast<int>(i);
    Word omega(block.begin() + cut, block.end());
    omega.insert(omega.end(), block.begin(), block.begin() + cut);
    add_neutral_powers(pool, p, omega, budget);
  } else {
    // Candidates come from sampled orbit segments on a doubling length
    // ladder. A larger budget only appends ladder rungs and admits longer
    // subwords, so the candidate pool grows with the budget and the achieved
    // distance cannot increase.
    const long long want =
        std::max<long long>(static_cast<long long>(cfg.sample_factor) * budget,
                            cfg.min_sample);
    std::vector<int> ladder;
    for (long long len = cfg.min_sample;; len *= 2) {
      if (len > 1000000)
        throw resource_error("co_approx: segment ladder exceeds the sampling cap");
      ladder.push_back(static_cast<int>(len));
      if (len >= want) break;
    }
    for (std::size_t j = 0; j < ladder.size(); ++j) {
      const Word seg = sample_word(target, ladder[j], seed + j);
      if (cls == MeasureClass::Alpha) {
        add_sign_subwords(pool, seg, budget, /*opener_side=*/true);
      } else if (cls == MeasureClass::Beta) {
        add_sign_subwords(pool, seg, budget, /*opener_side=*/false);
      } else {
        for_each_neutral_subword(seg, (budget - 1) / 2, [&](const Word& omega) {
          add_neutral_powers(pool, p, omega, budget);
        });
      }
    }
  }

  if (pool.empty())
    throw budget_error("co_approx: no admissible approximant within period budget " +
                       std::to_string(budget));

  const std::vector<RankTerm> terms = rank_terms(target, cfg.metric_len);
  const std::vector<PeriodicPoint> candidates = pool.sorted();
  std::size_t best = 0;
  RankValue best_rank = rank_distance(terms, MeasureSpec::co(candidates[0]));
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    RankValue r = rank_distance(terms, MeasureSpec::co(candidates[i]));
    if (rank_less(r, best_rank)) {
      best = i;
      best_rank = std::move(r);
    }
  }
  return MeasureSpec::co(candidates[best]);
}

}  // namespace dyckm
