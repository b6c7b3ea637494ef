#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dyckm/errors.hpp"
#include "dyckm/measure.hpp"
#include "dyckm/rng.hpp"

namespace dyckm {

namespace {

Word sample_bernoulli(const AlphabetParams& p, const BernoulliSpec& b, int n,
                      SeededRng& rng) {
  const std::vector<Symbol> alphabet = ambient_alphabet(p, b.ambient);
  Word w;
  w.reserve(n);
  for (int i = 0; i < n; ++i) w.push_back(alphabet[rng.draw(b.weights)]);
  return w;
}

Word sample_markov(const AlphabetParams& p, const MarkovSpec& m, int n,
                   SeededRng& rng) {
  const std::vector<Symbol> alphabet = ambient_alphabet(p, m.ambient);
  Word w;
  w.reserve(n);
  int state = rng.draw(m.stationary);
  w.push_back(alphabet[state]);
  for (int i = 1; i < n; ++i) {
    state = rng.draw(m.kernel[state]);
    w.push_back(alphabet[state]);
  }
  return w;
}

Word sample_co(const COSpec& c, int n, SeededRng& rng) {
  const int phase = rng.draw_uniform(c.point.period());
  Word w;
  w.reserve(n);
  for (int i = 0; i < n; ++i) w.push_back(c.point.at(phase + i));
  return w;
}

// Number of collapsed brackets in the window whose partner lies outside it:
// for Gamma::Alpha right brackets unmatched on the left-to-right scan, for
// Gamma::Beta left brackets unmatched on the mirrored scan.
int outside_partners(Gamma gamma, const Word& w) {
  int depth = 0, unmatched = 0;
  const bool alpha = gamma == Gamma::Alpha;
  const std::size_t n = w.size();
  for (std::size_t t = 0; t < n; ++t) {
    const int step = height_step(alpha ? w[t] : w[n - 1 - t]) * (alpha ? 1 : -1);
    if (step > 0) {
      ++depth;
    } else if (step < 0) {
      if (depth > 0) --depth;
      else ++unmatched;
    }
  }
  return unmatched;
}

Word sample_pushforward(const AlphabetParams& p, const PushforwardSpec& pf,
                        int n, SeededRng& rng, const SampleConfig& cfg) {
  const MeasureSpec& inner = *pf.inner;
  const Ambient amb = collapsed_ambient(pf.gamma);
  const std::vector<Symbol> alphabet = ambient_alphabet(p, amb);
  const bool alpha = pf.gamma == Gamma::Alpha;

  // One step of the walk that extends the sampled window away from the side
  // where the missing partners sit: i.i.d. for Bernoulli, the reversed kernel
  // for a Markov inner when growing leftwards, the kernel itself rightwards.
  std::vector<std::vector<Rat>> reversed;
  if (inner.is_markov() && alpha) {
    const MarkovSpec& m = inner.as_markov();
    const std::size_t s = alphabet.size();
    reversed.assign(s, std::vector<Rat>(s, Rat(0)));
    for (std::size_t x = 0; x < s; ++x) {
      if (sgn(m.stationary[x]) == 0) continue;
      for (std::size_t y = 0; y < s; ++y)
        reversed[x][y] = m.stationary[y] * m.kernel[y][x] / m.stationary[x];
    }
  }
  const auto extend = [&](int state) {
    if (inner.is_bernoulli()) return rng.draw(inner.as_bernoulli().weights);
    return rng.draw(alpha ? reversed[state] : inner.as_markov().kernel[state]);
  };

  for (int attempt = 0; attempt < cfg.retries; ++attempt) {
    Word window = inner.is_bernoulli()
                      ? sample_bernoulli(p, inner.as_bernoulli(), n, rng)
                      : sample_markov(p, inner.as_markov(), n, rng);
    const int need = outside_partners(pf.gamma, window);

    // Walk outward until the running height has crossed `need` levels; the
    // crossing positions are exactly the missing partners.
    Word context;
    if (need > 0) {
      int state = symbol_rank(p, amb, alpha ? window.front() : window.back());
      int cum = 0;
      bool done = false;
      while (static_cast<int>(context.size()) < cfg.max_extension) {
        state = extend(state);
        const Symbol& s = alphabet[state];
        context.push_back(s);
        cum += height_step(s) * (alpha ? 1 : -1);
        if (cum == need) {
          done = true;
          break;
        }
      }
      if (!done) continue;  // context budget exhausted; redraw the window
    }

    // Assemble coordinates in reading order and restore indices through the
    // bracket scan: every window bracket now has its partner in view.
    Word combined;
    if (alpha) {
      combined.assign(context.rbegin(), context.rend());
      combined.insert(combined.end(), window.begin(), window.end());
    } else {
      combined = window;
      combined.insert(combined.end(), context.begin(), context.end());
    }
    const std::size_t len = combined.size();
    std::vector<int> stack;
    Word out = combined;
    for (std::size_t t = 0; t < len; ++t) {
      const std::size_t i = alpha ? t : len - 1 - t;
      const Symbol& s = combined[i];
      const int step = height_step(s) * (alpha ? 1 : -1);
      if (step > 0) {
        stack.push_back(s.index);
      } else if (step < 0) {
        if (!stack.empty()) {
          if (s.kind == SymbolKind::CollapsedRight)
            out[i] = right_bracket(stack.back());
          else if (s.kind == SymbolKind::CollapsedLeft)
            out[i] = left_bracket(stack.back());
          stack.pop_back();
        }
      }
    }
    const std::size_t off = alpha ? context.size() : 0;
    Word result(out.begin() + off, out.begin() + off + n);
    for (const Symbol& s : result)
      if (s.kind == SymbolKind::CollapsedLeft || s.kind == SymbolKind::CollapsedRight)
        throw std::logic_error("sample: unresolved collapsed bracket");
    return result;
  }
  throw resource_error(
      "sample: could not resolve every collapsed bracket within max_extension");
}

}  // namespace

Word sample_word(const MeasureSpec& mu, int n, std::uint64_t seed,
                 const SampleConfig& cfg) {
  if (n < 0) throw std::invalid_argument("sample: negative length");
  SeededRng rng(seed);
  if (n == 0) return {};
  if (mu.is_bernoulli()) return sample_bernoulli(mu.params(), mu.as_bernoulli(), n, rng);
  if (mu.is_markov()) return sample_markov(mu.params(), mu.as_markov(), n, rng);
  if (mu.is_co()) return sample_co(mu.as_co(), n, rng);
  return sample_pushforward(mu.params(), mu.as_pushforward(), n, rng, cfg);
}

}  // namespace dyckm
