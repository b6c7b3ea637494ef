#ifndef DYCKM_MEASURE_HPP
#define DYCKM_MEASURE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dyckm/alphabet.hpp"
#include "dyckm/embedding.hpp"
#include "dyckm/fn.hpp"
#include "dyckm/periodic.hpp"
#include "dyckm/rational.hpp"

namespace dyckm {

// Weights / kernel rows are indexed by canonical symbol rank in the ambient
// alphabet.
struct BernoulliSpec {
  Ambient ambient;
  std::vector<Rat> weights;
};

struct MarkovSpec {
  Ambient ambient;
  std::vector<std::vector<Rat>> kernel;
  std::vector<Rat> stationary;  // unique stationary row vector of the kernel
};

struct COSpec {
  PeriodicPoint point;  // equidistribution on the orbit of this point
};

class MeasureSpec;

// Image of an inner measure on the collapsed full shift under the index
// reconstruction map. Requires the strict transport condition on the inner
// measure; the image then lives on SigmaD.
struct PushforwardSpec {
  Gamma gamma;
  std::shared_ptr<const MeasureSpec> inner;
};

// An invariant measure given by a finite description. Construction validates
// all structural invariants (stochasticity, support, transport condition) and
// throws std::invalid_argument / transport_error on violation.
class MeasureSpec {
 public:
  static MeasureSpec bernoulli(const AlphabetParams& p, Ambient ambient,
                               std::vector<Rat> weights);
  // Stationary vector computed from the kernel (must be irreducible).
  static MeasureSpec markov(const AlphabetParams& p, Ambient ambient,
                            std::vector<std::vector<Rat>> kernel);
  static MeasureSpec co(PeriodicPoint point);
  static MeasureSpec pushforward(Gamma gamma, MeasureSpec inner);

  // Uniform Bernoulli on the whole ambient alphabet.
  static MeasureSpec uniform(const AlphabetParams& p, Ambient ambient);

  const AlphabetParams& params() const { return params_; }
  Ambient ambient() const;

  bool is_bernoulli() const { return std::holds_alternative<BernoulliSpec>(v_); }
  bool is_markov() const { return std::holds_alternative<MarkovSpec>(v_); }
  bool is_co() const { return std::holds_alternative<COSpec>(v_); }
  bool is_pushforward() const { return std::holds_alternative<PushforwardSpec>(v_); }

  const BernoulliSpec& as_bernoulli() const { return std::get<BernoulliSpec>(v_); }
  const MarkovSpec& as_markov() const { return std::get<MarkovSpec>(v_); }
  const COSpec& as_co() const { return std::get<COSpec>(v_); }
  const PushforwardSpec& as_pushforward() const { return std::get<PushforwardSpec>(v_); }

  std::string describe() const;

  friend bool operator==(const MeasureSpec&, const MeasureSpec&);

 private:
  MeasureSpec(AlphabetParams p, std::variant<BernoulliSpec, MarkovSpec, COSpec, PushforwardSpec> v)
      : params_(p), v_(std::move(v)) {}

  AlphabetParams params_;
  std::variant<BernoulliSpec, MarkovSpec, COSpec, PushforwardSpec> v_;
};

// A probability (or integral) that is exact rational when the computation
// path allows it and a deterministic numeric value with an error bound
// otherwise.
struct ProbValue {
  Rat exact;          // meaningful iff is_exact
  double value = 0;   // always set
  double error = 0;   // 0 when exact; solver tolerance or MC standard error
  bool is_exact = true;

  static ProbValue from_rat(Rat q);
  static ProbValue from_numeric(double v, double err);
};

// Mass of the cylinder fixing w at consecutive coordinates. Exact for
// Bernoulli, Markov, CO, and pushforwards of Bernoulli measures; pushforwards
// of Markov measures use a deterministic first-passage solve (error bound
// reported). Inadmissible / unsupported words get mass zero, not an error.
ProbValue cylinder_prob(const MeasureSpec& mu, const Word& w);

// Integral of a locally constant observable: sum of f over listed windows
// weighted by their cylinder mass, plus the default value on the rest.
ProbValue integral(const MeasureSpec& mu, const LocallyConstantFn& f);

// Kolmogorov-Sinai entropy: closed forms per variant (CO: 0; Bernoulli /
// Markov: Shannon formulas; pushforward: entropy of the inner measure, which
// the reconstruction preserves).
double measure_entropy(const MeasureSpec& mu);

// Expected value of the transport observable: 2 on collapsed-side openers
// (for Gamma::Alpha: the indexed openers), 1 on units, 0 on the collapsed
// brackets. A value above 1 forces the measure onto the embedding image.
// Requires an inner-side measure (ambient == collapsed_ambient(gamma)).
Rat transport_condition(const MeasureSpec& nu, Gamma gamma);

enum class MeasureClass { Alpha, Zero, Beta };
std::string measure_class_name(MeasureClass c);

// Trichotomy by mean drift (exact rational for every variant): Alpha for
// positive drift, Beta for negative, Zero for drift zero.
MeasureClass classify_measure(const MeasureSpec& mu);
Rat measure_drift(const MeasureSpec& mu);

struct WeakStarResult {
  Rat exact;              // meaningful iff is_exact
  double value = 0;
  double error = 0;       // numeric error contribution (0 when exact)
  double truncation = 0;  // tail bound 2^{-terms} of the dropped cylinders
  int terms = 0;          // number of admissible cylinders of length <= L
  bool is_exact = true;
};

// Truncated cylinder metric: sum over admissible words of length 1..L in
// (length, lex) order of |mu(w) - nu(w)| / 2^n, n the 1-based position in
// that order. Both measures must share params and ambient.
WeakStarResult weakstar_distance(const MeasureSpec& mu, const MeasureSpec& nu, int max_len);

// True when every admissible cylinder of length <= L has positive mass.
bool fully_supported(const MeasureSpec& mu, int max_len);

struct SampleConfig {
  int max_extension = 4096;  // context symbols appended while resolving brackets
  int retries = 16;
};

// A length-n window of a mu-random point (coordinates 0..n-1). Pushforward
// sampling draws the inner window plus enough context to resolve every
// collapsed bracket, then reconstructs indices.
Word sample_word(const MeasureSpec& mu, int n, std::uint64_t seed,
                 const SampleConfig& cfg = {});

struct CoApproxConfig {
  int metric_len = 2;     // truncation for candidate selection
  int sample_factor = 4;  // orbit segment length = max(factor * budget, min_sample)
  int min_sample = 256;
};

// Best periodic-orbit approximant of the target within the period budget:
// candidates are sign-correct subwords of one seeded orbit segment of the
// target (class-0 targets periodize a neutral rotation with a single opener
// appended), ranked by truncated metric distance; the candidate set grows
// with the budget, so the achieved distance is non-increasing in it.
MeasureSpec co_approx(const MeasureSpec& target, int budget, std::uint64_t seed,
                      const CoApproxConfig& cfg = {});

}  // namespace dyckm

#endif
