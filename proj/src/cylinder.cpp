#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dyckm/errors.hpp"
#include "dyckm/measure.hpp"
#include "dyckm/reduce.hpp"

namespace dyckm {

namespace {

ProbValue bernoulli_cylinder(const AlphabetParams& p, const BernoulliSpec& b,
                             const Word& w) {
  Rat prob(1);
  for (const Symbol& s : w) prob *= b.weights[symbol_rank(p, b.ambient, s)];
  return ProbValue::from_rat(prob);
}

ProbValue markov_cylinder(const AlphabetParams& p, const MarkovSpec& m,
                          const Word& w) {
  Rat prob = m.stationary[symbol_rank(p, m.ambient, w[0])];
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (sgn(prob) == 0) break;
    prob *= m.kernel[symbol_rank(p, m.ambient, w[i - 1])]
                    [symbol_rank(p, m.ambient, w[i])];
  }
  return ProbValue::from_rat(prob);
}

ProbValue co_cylinder(const COSpec& c, const Word& w) {
  const int period = c.point.period();
  long long hits = 0;
  for (int i = 0; i < period; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (!(c.point.at(i + static_cast<long long>(j)) == w[j])) {
        match = false;
        break;
      }
    }
    if (match) ++hits;
  }
  Rat prob(static_cast<long>(hits), static_cast<long>(period));
  prob.canonicalize();
  return ProbValue::from_rat(prob);
}

// Scan of a SigmaD word against the bracket discipline of one side. For
// Gamma::Alpha: left to right, stack of open left brackets; a right bracket
// with a nonempty stack is matched inside the window (indices must agree or
// the word is inadmissible), with an empty stack its partner lies left of the
// window and only the inner measure knows its index distribution. Gamma::Beta
// mirrors the scan right to left. `unmatched` collects the required partner
// indices in the order the partners are met when walking out of the window,
// which for both sides is the scan encounter order.
struct WindowScan {
  bool mismatch = false;
  std::vector<int> unmatched;
};

WindowScan scan_window(Gamma gamma, const Word& w) {
  WindowScan out;
  std::vector<int> stack;
  const bool alpha = gamma == Gamma::Alpha;
  const std::size_t n = w.size();
  for (std::size_t t = 0; t < n; ++t) {
    const Symbol& s = alpha ? w[t] : w[n - 1 - t];
    const SymbolKind push_kind = alpha ? SymbolKind::LeftBracket : SymbolKind::RightBracket;
    if (s.kind == push_kind) {
      stack.push_back(s.index);
    } else if (s.kind != SymbolKind::Unit) {
      if (!stack.empty()) {
        if (stack.back() != s.index) {
          out.mismatch = true;
          return out;
        }
        stack.pop_back();
      } else {
        out.unmatched.push_back(s.index);
      }
    }
  }
  return out;
}

// Minimal nonnegative solution of the one-level first-passage system
//   D[s][k] = K[s][down_k] + sum_f K[s][f] D[f][k]
//           + sum_u K[s][u] sum_r D[u][r] D[down_r][k],
// i.e. the probability that a walk driven by K, started in state s, first
// steps below its initial level through the k-th down symbol. An up step must
// be undone by two passages, hence the quadratic term. Iteration from zero is
// monotone, so it converges from below exactly when the passage happens
// almost surely; the transport condition enforced at measure construction
// guarantees that.
struct FirstPassage {
  std::vector<std::vector<double>> d;  // states x downs
  double residual = 0;
};

FirstPassage first_passage_down(const std::vector<std::vector<double>>& kernel,
                                const std::vector<int>& downs,
                                const std::vector<int>& flats,
                                const std::vector<int>& ups) {
  const std::size_t s_count = kernel.size();
  const std::size_t d_count = downs.size();
  FirstPassage fp;
  fp.d.assign(s_count, std::vector<double>(d_count, 0.0));
  std::vector<std::vector<double>> next = fp.d;
  double delta = 1;
  for (int iter = 0; iter < 50000 && delta > 1e-17; ++iter) {
    delta = 0;
    for (std::size_t s = 0; s < s_count; ++s) {
      for (std::size_t k = 0; k < d_count; ++k) {
        double v = kernel[s][downs[k]];
        for (int f : flats) v += kernel[s][f] * fp.d[f][k];
        for (int u : ups) {
          double two = 0;
          for (std::size_t r = 0; r < d_count; ++r)
            two += fp.d[u][r] * fp.d[downs[r]][k];
          v += kernel[s][u] * two;
        }
        next[s][k] = v;
        delta = std::max(delta, v - fp.d[s][k]);
      }
    }
    fp.d.swap(next);
  }
  fp.residual = delta;
  return fp;
}

ProbValue pushforward_cylinder(const AlphabetParams& p, const PushforwardSpec& pf,
                               const Word& w) {
  const WindowScan scan = scan_window(pf.gamma, w);
  if (scan.mismatch) return ProbValue::from_rat(Rat(0));

  const MeasureSpec& inner = *pf.inner;
  const Ambient amb = collapsed_ambient(pf.gamma);
  const Word cw = collapse_word(pf.gamma, w);
  const bool alpha = pf.gamma == Gamma::Alpha;
  const auto indexed = [&](int k) {
    return alpha ? left_bracket(k) : right_bracket(k);
  };

  if (inner.is_bernoulli()) {
    const BernoulliSpec& b = inner.as_bernoulli();
    Rat prob(1);
    for (const Symbol& s : cw) prob *= b.weights[symbol_rank(p, amb, s)];
    // A bracket whose partner precedes (follows) the window is reconstructed
    // from an independent product past, so its index is the normalized weight
    // of the matching indexed bracket.
    Rat side(0);
    for (int k = 1; k <= p.M; ++k)
      side += b.weights[symbol_rank(p, amb, indexed(k))];
    for (int k : scan.unmatched) {
      if (sgn(side) == 0) return ProbValue::from_rat(Rat(0));
      prob *= b.weights[symbol_rank(p, amb, indexed(k))] / side;
    }
    return ProbValue::from_rat(prob);
  }

  const MarkovSpec& m = inner.as_markov();
  Rat base = m.stationary[symbol_rank(p, amb, cw[0])];
  for (std::size_t i = 1; i < cw.size() && sgn(base) != 0; ++i)
    base *= m.kernel[symbol_rank(p, amb, cw[i - 1])][symbol_rank(p, amb, cw[i])];
  if (scan.unmatched.empty() || sgn(base) == 0)
    return ProbValue::from_rat(base);

  // Out-of-window partners of a stationary Markov chain: walk away from the
  // window edge (the time-reversed kernel for Gamma::Alpha, the kernel itself
  // for Gamma::Beta) and record which indexed bracket performs each first
  // passage down. Successive partners chain through the Markov property.
  const std::vector<Symbol> alphabet = ambient_alphabet(p, amb);
  const std::size_t s_count = alphabet.size();
  std::vector<std::vector<double>> walk(s_count, std::vector<double>(s_count, 0.0));
  for (std::size_t x = 0; x < s_count; ++x) {
    if (alpha) {
      if (sgn(m.stationary[x]) == 0) continue;
      for (std::size_t y = 0; y < s_count; ++y)
        walk[x][y] = to_double(m.stationary[y] * m.kernel[y][x] / m.stationary[x]);
    } else {
      for (std::size_t y = 0; y < s_count; ++y)
        walk[x][y] = to_double(m.kernel[x][y]);
    }
  }
  std::vector<int> downs, flats, ups;
  for (int k = 1; k <= p.M; ++k) downs.push_back(symbol_rank(p, amb, indexed(k)));
  for (int l = 1; l <= p.N; ++l) flats.push_back(symbol_rank(p, amb, unit(l)));
  ups.push_back(symbol_rank(p, amb, alpha ? collapsed_right() : collapsed_left()));

  const FirstPassage fp = first_passage_down(walk, downs, flats, ups);
  for (std::size_t x = 0; x < s_count; ++x) {
    if (sgn(m.stationary[x]) == 0) continue;
    double row = 0;
    for (double v : fp.d[x]) row += v;
    if (row < 1 - 1e-6 || row > 1 + 1e-6)
      throw transport_error(
          "first passage out of the window is not almost sure; the inner "
          "measure violates the transport condition",
          "cylinder_prob");
  }

  double value = to_double(base);
  int state = symbol_rank(p, amb, alpha ? cw.front() : cw.back());
  for (int k : scan.unmatched) {
    value *= fp.d[state][k - 1];
    state = downs[k - 1];
  }
  const double err =
      static_cast<double>(scan.unmatched.size()) * (1e-13 + 1e3 * fp.residual);
  return ProbValue::from_numeric(value, err);
}

}  // namespace

ProbValue cylinder_prob(const MeasureSpec& mu, const Word& w) {
  const AlphabetParams& p = mu.params();
  for (const Symbol& s : w) symbol_rank(p, mu.ambient(), s);  // validates
  if (w.empty()) return ProbValue::from_rat(Rat(1));
  if (mu.ambient() == Ambient::SigmaD && !is_admissible(p, w))
    return ProbValue::from_rat(Rat(0));
  if (mu.is_bernoulli()) return bernoulli_cylinder(p, mu.as_bernoulli(), w);
  if (mu.is_markov()) return markov_cylinder(p, mu.as_markov(), w);
  if (mu.is_co()) return co_cylinder(mu.as_co(), w);
  return pushforward_cylinder(p, mu.as_pushforward(), w);
}

}  // namespace dyckm
