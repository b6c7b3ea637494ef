#include <stdexcept>

#include "dyckm/errors.hpp"
#include "dyckm/measure.hpp"

namespace dyckm {

namespace {

// A positive-weight set over the SigmaD alphabet carries an invariant measure
// of the bracket shift only when no mismatched pair can ever occur: openers
// only, closers only, or a single bracket index on both sides.
void check_one_sided_support(const std::vector<Symbol>& alphabet,
                             const std::vector<char>& in_support) {
  std::vector<int> openers, closers;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!in_support[i]) continue;
    if (alphabet[i].kind == SymbolKind::LeftBracket) openers.push_back(alphabet[i].index);
    if (alphabet[i].kind == SymbolKind::RightBracket) closers.push_back(alphabet[i].index);
  }
  if (openers.empty() || closers.empty()) return;
  if (openers.size() == 1 && closers.size() == 1 && openers[0] == closers[0]) return;
  for (int a : openers)
    for (int b : closers)
      if (a != b)
        throw std::invalid_argument("support charges the mismatched pair A" + std::to_string(a) +
                                    " B" + std::to_string(b) +
                                    "; such a spec puts mass outside the bracket shift");
  throw std::invalid_argument("unsupported bracket support pattern");
}

}  // namespace

MeasureSpec MeasureSpec::bernoulli(const AlphabetParams& p, Ambient ambient,
                                   std::vector<Rat> weights) {
  auto alphabet = ambient_alphabet(p, ambient);
  if (weights.size() != alphabet.size())
    throw std::invalid_argument("expected " + std::to_string(alphabet.size()) + " weights, got " +
                                std::to_string(weights.size()));
  Rat sum = 0;
  for (Rat& w : weights) {
    w.canonicalize();  // callers may hand over raw p/q pairs
    if (w < 0) throw std::invalid_argument("negative weight");
    sum += w;
  }
  if (sum != 1) throw std::invalid_argument("weights sum to " + rational_to_string(sum) + ", not 1");
  if (ambient == Ambient::SigmaD) {
    std::vector<char> in_support(alphabet.size());
    for (std::size_t i = 0; i < alphabet.size(); ++i) in_support[i] = weights[i] > 0;
    check_one_sided_support(alphabet, in_support);
  }
  return MeasureSpec(p, BernoulliSpec{ambient, std::move(weights)});
}

MeasureSpec MeasureSpec::markov(const AlphabetParams& p, Ambient ambient,
                                std::vector<std::vector<Rat>> kernel) {
  auto alphabet = ambient_alphabet(p, ambient);
  if (kernel.size() != alphabet.size())
    throw std::invalid_argument("kernel size does not match the alphabet");
  for (auto& row : kernel)
    for (Rat& x : row) x.canonicalize();  // callers may hand over raw p/q pairs
  std::vector<Rat> pi = stationary_distribution(kernel);  // validates stochasticity
  if (ambient == Ambient::SigmaD) {
    // symbols reachable with positive stationary mass form the support
    std::vector<char> in_support(alphabet.size());
    for (std::size_t i = 0; i < alphabet.size(); ++i) in_support[i] = pi[i] > 0;
    check_one_sided_support(alphabet, in_support);
  }
  return MeasureSpec(p, MarkovSpec{ambient, std::move(kernel), std::move(pi)});
}

MeasureSpec MeasureSpec::co(PeriodicPoint point) {
  AlphabetParams p = point.params();
  return MeasureSpec(p, COSpec{std::move(point)});
}

MeasureSpec MeasureSpec::pushforward(Gamma gamma, MeasureSpec inner) {
  if (inner.ambient() != collapsed_ambient(gamma))
    throw std::invalid_argument("pushforward along " + gamma_name(gamma) + " needs an inner " +
                                ambient_name(collapsed_ambient(gamma)) + " measure");
  if (inner.is_co()) {
    // Orbits reconstruct exactly; image membership is all that is needed.
    const PeriodicPoint& y = inner.as_co().point;
    if (!in_image(gamma, y))
      throw transport_error("inner orbit lies outside the embedding image (transport value " +
                                rational_to_string(transport_condition(inner, gamma)) +
                                " < 1)",
                            periodic_to_string(y));
    return co(reconstruct(gamma, y));
  }
  Rat e = transport_condition(inner, gamma);
  if (e <= 1)
    throw transport_error("transport condition fails: integral " + rational_to_string(e) +
                              " <= 1, measure is not carried by the embedding image",
                          inner.describe());
  AlphabetParams p = inner.params();
  return MeasureSpec(p, PushforwardSpec{gamma, std::make_shared<MeasureSpec>(std::move(inner))});
}

MeasureSpec MeasureSpec::uniform(const AlphabetParams& p, Ambient ambient) {
  int size = ambient_size(p, ambient);
  return bernoulli(p, ambient, std::vector<Rat>(size, Rat(1, size)));
}

Ambient MeasureSpec::ambient() const {
  if (is_bernoulli()) return as_bernoulli().ambient;
  if (is_markov()) return as_markov().ambient;
  if (is_co()) return as_co().point.ambient();
  return Ambient::SigmaD;  // pushforward lands on the bracket shift
}

std::string MeasureSpec::describe() const {
  if (is_bernoulli()) return "bernoulli(" + ambient_name(ambient()) + ")";
  if (is_markov()) return "markov(" + ambient_name(ambient()) + ")";
  if (is_co()) return "co" + periodic_to_string(as_co().point);
  const auto& pf = as_pushforward();
  return "pushforward(" + gamma_name(pf.gamma) + ", " + pf.inner->describe() + ")";
}

bool operator==(const MeasureSpec& a, const MeasureSpec& b) {
  if (!(a.params_ == b.params_)) return false;
  if (a.v_.index() != b.v_.index()) return false;
  if (a.is_bernoulli())
    return a.as_bernoulli().ambient == b.as_bernoulli().ambient &&
           a.as_bernoulli().weights == b.as_bernoulli().weights;
  if (a.is_markov())
    return a.as_markov().ambient == b.as_markov().ambient &&
           a.as_markov().kernel == b.as_markov().kernel;
  if (a.is_co()) return a.as_co().point == b.as_co().point;
  return a.as_pushforward().gamma == b.as_pushforward().gamma &&
         *a.as_pushforward().inner == *b.as_pushforward().inner;
}

ProbValue ProbValue::from_rat(Rat q) {
  ProbValue v;
  v.exact = std::move(q);
  v.value = to_double(v.exact);
  v.error = 0;
  v.is_exact = true;
  return v;
}

ProbValue ProbValue::from_numeric(double value, double err) {
  ProbValue v;
  v.value = value;
  v.error = err;
  v.is_exact = false;
  return v;
}

}  // namespace dyckm
