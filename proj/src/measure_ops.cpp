#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dyckm/errors.hpp"
#include "dyckm/language.hpp"
#include "dyckm/measure.hpp"

namespace dyckm {

namespace {

constexpr long long kCylinderCap = 2000000;

// Accumulates sum of scale * prob terms, staying rational until a term forces
// a numeric value.
struct Accum {
  Rat exact{0};
  double numeric = 0;
  double error = 0;
  bool is_exact = true;

  void add(const ProbValue& v, const Rat& scale) {
    if (v.is_exact) {
      exact += v.exact * scale;
    } else {
      is_exact = false;
      numeric += v.value * to_double(scale);
      error += v.error * std::abs(to_double(scale));
    }
  }
};

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

// Streams words of length n over the ambient in lexicographic order: the
// admissible language for SigmaD, the whole full shift otherwise.
void for_each_ambient_word(const AlphabetParams& p, Ambient amb, int n,
                           const std::function<void(const Word&)>& fn) {
  if (amb == Ambient::SigmaD) {
    for_each_word(p, n, fn);
    return;
  }
  const std::vector<Symbol> alphabet = ambient_alphabet(p, amb);
  std::vector<int> digit(n, 0);
  Word w(n, alphabet[0]);
  while (true) {
    fn(w);
    int i = n - 1;
    while (i >= 0 && digit[i] + 1 == static_cast<int>(alphabet.size())) {
      digit[i] = 0;
      w[i] = alphabet[0];
      --i;
    }
    if (i < 0) return;
    ++digit[i];
    w[i] = alphabet[digit[i]];
  }
}

}  // namespace

ProbValue integral(const MeasureSpec& mu, const LocallyConstantFn& f) {
  if (!(f.params() == mu.params()) || f.ambient() != mu.ambient())
    throw std::invalid_argument(
        "integral: observable and measure live on different shifts");
  // Windows of one length partition the space, so the integral is the default
  // plus the tabulated corrections weighted by their cylinder mass.
  Accum acc;
  acc.exact = f.default_value();
  for (const auto& [key, val] : f.table()) {
    const Rat scale = val - f.default_value();
    if (sgn(scale) == 0) continue;
    acc.add(cylinder_prob(mu, parse_word(f.params(), f.ambient(), key)), scale);
  }
  if (acc.is_exact) return ProbValue::from_rat(acc.exact);
  return ProbValue::from_numeric(to_double(acc.exact) + acc.numeric, acc.error);
}

double measure_entropy(const MeasureSpec& mu) {
  if (mu.is_co()) return 0.0;
  if (mu.is_bernoulli()) {
    double h = 0;
    for (const Rat& q : mu.as_bernoulli().weights) h -= xlogx(to_double(q));
    return h;
  }
  if (mu.is_markov()) {
    const MarkovSpec& m = mu.as_markov();
    double h = 0;
    for (std::size_t x = 0; x < m.kernel.size(); ++x) {
      double row = 0;
      for (const Rat& q : m.kernel[x]) row -= xlogx(to_double(q));
      h += to_double(m.stationary[x]) * row;
    }
    return h;
  }
  // The index reconstruction is invertible off a null set, so it carries the
  // inner entropy over unchanged.
  return measure_entropy(*mu.as_pushforward().inner);
}

Rat transport_condition(const MeasureSpec& nu, Gamma gamma) {
  const Ambient amb = collapsed_ambient(gamma);
  if (nu.ambient() != amb)
    throw std::invalid_argument(
        "transport condition is read on the collapsed shift " + ambient_name(amb));
  const AlphabetParams& p = nu.params();
  const auto weight = [&](const Symbol& s) -> int {
    if (s.kind == SymbolKind::Unit) return 1;
    if (s.kind == SymbolKind::CollapsedLeft || s.kind == SymbolKind::CollapsedRight)
      return 0;
    return 2;  // the side that keeps its indices
  };
  Rat total(0);
  if (nu.is_bernoulli() || nu.is_markov()) {
    const std::vector<Symbol> alphabet = ambient_alphabet(p, amb);
    const std::vector<Rat>& mass =
        nu.is_bernoulli() ? nu.as_bernoulli().weights : nu.as_markov().stationary;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      total += mass[i] * weight(alphabet[i]);
    return total;
  }
  const PeriodicPoint& x = nu.as_co().point;
  for (const Symbol& s : x.block()) total += weight(s);
  return total / x.period();
}

std::string measure_class_name(MeasureClass c) {
  switch (c) {
    case MeasureClass::Alpha: return "alpha";
    case MeasureClass::Zero: return "zero";
    default: return "beta";
  }
}

Rat measure_drift(const MeasureSpec& mu) {
  if (mu.is_pushforward()) return measure_drift(*mu.as_pushforward().inner);
  if (mu.is_co()) {
    const PeriodicPoint& x = mu.as_co().point;
    Rat d(x.period_drift(), x.period());
    d.canonicalize();
    return d;
  }
  const AlphabetParams& p = mu.params();
  const std::vector<Symbol> alphabet = ambient_alphabet(p, mu.ambient());
  const std::vector<Rat>& mass =
      mu.is_bernoulli() ? mu.as_bernoulli().weights : mu.as_markov().stationary;
  Rat total(0);
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    total += mass[i] * height_step(alphabet[i]);
  return total;
}

MeasureClass classify_measure(const MeasureSpec& mu) {
  const int s = sgn(measure_drift(mu));
  if (s > 0) return MeasureClass::Alpha;
  if (s < 0) return MeasureClass::Beta;
  return MeasureClass::Zero;
}

WeakStarResult weakstar_distance(const MeasureSpec& mu, const MeasureSpec& nu,
                                 int max_len) {
  if (!(mu.params() == nu.params()) || mu.ambient() != nu.ambient())
    throw std::invalid_argument("weakstar distance needs a common shift");
  WeakStarResult out;
  Rat exact_sum(0);
  Rat weight(1);
  const Rat half(1, 2);
  long long terms = 0;
  const auto visit = [&](const Word& w) {
    if (++terms > kCylinderCap)
      throw resource_error("weakstar distance: cylinder count exceeds the cap");
    weight *= half;
    const ProbValue a = cylinder_prob(mu, w);
    const ProbValue b = cylinder_prob(nu, w);
    if (a.is_exact && b.is_exact) {
      Rat d = a.exact - b.exact;
      if (sgn(d) < 0) d = -d;
      exact_sum += d * weight;
    } else {
      out.is_exact = false;
      out.value += std::abs(a.value - b.value) * to_double(weight);
      out.error += (a.error + b.error) * to_double(weight);
    }
  };
  for (int n = 1; n <= max_len; ++n)
    for_each_ambient_word(mu.params(), mu.ambient(), n, visit);
  out.terms = static_cast<int>(terms);
  out.truncation = terms > 1100 ? 0.0 : std::ldexp(1.0, -static_cast<int>(terms));
  if (out.is_exact) {
    out.exact = exact_sum;
    out.value = to_double(exact_sum);
  } else {
    out.value += to_double(exact_sum);
  }
  return out;
}

bool fully_supported(const MeasureSpec& mu, int max_len) {
  bool ok = true;
  long long terms = 0;
  const auto visit = [&](const Word& w) {
    if (++terms > kCylinderCap)
      throw resource_error("support scan: cylinder count exceeds the cap");
    if (!ok) return;
    const ProbValue v = cylinder_prob(mu, w);
    if (v.is_exact ? sgn(v.exact) <= 0 : v.value <= v.error) ok = false;
  };
  for (int n = 1; n <= max_len && ok; ++n)
    for_each_ambient_word(mu.params(), mu.ambient(), n, visit);
  return ok;
}

}  // namespace dyckm
