#include "dyckm/optimize.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyckm/errors.hpp"
#include "dyckm/language.hpp"
#include "dyckm/reduce.hpp"

namespace dyckm {

namespace {

// Search graph over states (visible stack, overflow flag, last 2r symbols).
// The visible stack keeps the most recent <= cap unmatched opener indices; a
// push beyond cap forgets the oldest entry and sets the flag. A forgotten
// entry can only be popped once everything above it is gone, i.e. at an empty
// visible stack with the flag set — exactly the transition we block — so every
// pop the graph admits is verified against the true partner, and cycles are
// realizable orbits for any cap. With cap >= the period budget no in-cycle
// push is ever forgotten before its pop (at most budget-1 pushes intervene),
// which makes the cycle set complete for periods within the budget.
struct SearchGraph {
  int V = 0;
  std::vector<int> efrom, eto, eval, esym;  // flat edge arrays
  std::vector<Rat> vals;                    // distinct observable values
  std::vector<long long> ivals;             // vals scaled by a common denominator
  bool int_ok = false;                      // scaled values fit the int64 dp
  Int scale = 1;
};

SearchGraph build_graph(const LocallyConstantFn& f, int budget, int cap, int max_states) {
  const AlphabetParams& p = f.params();
  if (2 * p.M + p.N > 250) throw resource_error("alphabet too large for the optimizer");
  const auto alphabet = ambient_alphabet(p, Ambient::SigmaD);
  const int r = f.radius();

  SearchGraph g;
  std::map<Rat, int> vid;
  auto value_id = [&](const Rat& v) {
    auto it = vid.find(v);
    if (it != vid.end()) return it->second;
    int id = static_cast<int>(g.vals.size());
    vid.emplace(v, id);
    g.vals.push_back(v);
    return id;
  };

  struct Node {
    std::vector<int> stack;
    bool deep = false;
    Word hist;
  };
  auto key_of = [&](const Node& n) {
    std::string k;
    k.reserve(n.stack.size() + n.hist.size() + 2);
    k.push_back(n.deep ? 1 : 0);
    for (int s : n.stack) k.push_back(static_cast<char>(s));
    k.push_back(static_cast<char>(0xff));
    for (const Symbol& s : n.hist)
      k.push_back(static_cast<char>(symbol_rank(p, Ambient::SigmaD, s)));
    return k;
  };
  std::unordered_map<std::string, int> index;
  std::vector<Node> nodes;
  auto intern = [&](Node n) {
    auto k = key_of(n);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (static_cast<int>(nodes.size()) >= max_states)
      throw resource_error("optimizer state graph above " + std::to_string(max_states) +
                           " states");
    int id = static_cast<int>(nodes.size());
    index.emplace(std::move(k), id);
    nodes.push_back(std::move(n));
    return id;
  };

  // Seed with every admissible history; unreachable (stack, history) combos
  // cannot close a cycle, so liberal seeding is harmless.
  if (count_words(p, 2 * r) > max_states)
    throw resource_error("window histories exceed the optimizer state cap");
  for (const Word& h : enumerate_words(p, 2 * r, std::max(12, 2 * r)))
    intern(Node{{}, false, h});

  for (int v = 0; v < static_cast<int>(nodes.size()); ++v) {
    const Node cur = nodes[v];  // copy: intern may reallocate
    for (const Symbol& s : alphabet) {
      std::vector<int> st = cur.stack;
      bool deep = cur.deep;
      if (s.kind == SymbolKind::LeftBracket) {
        st.push_back(s.index);
        if (static_cast<int>(st.size()) > cap) {
          st.erase(st.begin());
          deep = true;
        }
      } else if (s.kind == SymbolKind::RightBracket) {
        if (!st.empty()) {
          if (st.back() != s.index) continue;  // visible partner mismatch
          st.pop_back();
        } else if (deep) {
          continue;  // partner forgotten: the index cannot be verified
        }
        // empty and shallow: the closer stays unmatched, any index is fine
      }
      Word window = cur.hist;
      window.push_back(s);
      if (!is_admissible(p, window)) continue;  // window occurs in no point
      Word h2(window.begin() + 1, window.end());
      int to = intern(Node{std::move(st), deep, std::move(h2)});
      g.efrom.push_back(v);
      g.eto.push_back(to);
      g.eval.push_back(value_id(f.value(window)));
      g.esym.push_back(symbol_rank(p, Ambient::SigmaD, s));
    }
  }
  g.V = static_cast<int>(nodes.size());

  // Fixed-point fast path: one common denominator, sums bounded by budget*max.
  Int den = 1;
  for (const Rat& v : g.vals) den = lcm(den, Int(v.get_den()));
  g.scale = den;
  if (den.fits_slong_p()) {
    bool ok = true;
    long long maxabs = 0;
    std::vector<long long> iv;
    iv.reserve(g.vals.size());
    for (const Rat& v : g.vals) {
      Int scaled = Int(v.get_num()) * (den / Int(v.get_den()));
      if (!scaled.fits_slong_p()) {
        ok = false;
        break;
      }
      long long x = scaled.get_si();
      iv.push_back(x);
      maxabs = std::max(maxabs, std::llabs(x));
    }
    if (ok && maxabs <= (1LL << 60) / std::max(budget, 1)) {
      g.int_ok = true;
      g.ivals = std::move(iv);
    }
  }
  return g;
}

std::vector<int> strongly_connected(const SearchGraph& g, int& ncomp) {
  const int V = g.V;
  const int E = static_cast<int>(g.efrom.size());
  std::vector<int> off(V + 1, 0), lst(E);
  for (int e = 0; e < E; ++e) off[g.efrom[e] + 1]++;
  for (int v = 0; v < V; ++v) off[v + 1] += off[v];
  {
    std::vector<int> fill(off.begin(), off.end() - 1);
    for (int e = 0; e < E; ++e) lst[fill[g.efrom[e]]++] = e;
  }

  std::vector<int> disc(V, -1), low(V, 0), comp(V, -1), stk;
  std::vector<char> onstk(V, 0);
  std::vector<std::pair<int, int>> frames;  // node, next out-edge slot
  int timer = 0;
  ncomp = 0;
  for (int root = 0; root < V; ++root) {
    if (disc[root] != -1) continue;
    disc[root] = low[root] = timer++;
    stk.push_back(root);
    onstk[root] = 1;
    frames.emplace_back(root, off[root]);
    while (!frames.empty()) {
      auto [v, it] = frames.back();
      if (it < off[v + 1]) {
        frames.back().second++;
        int w = g.eto[lst[it]];
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stk.push_back(w);
          onstk[w] = 1;
          frames.emplace_back(w, off[w]);
        } else if (onstk[w]) {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        if (low[v] == disc[v]) {
          while (true) {
            int u = stk.back();
            stk.pop_back();
            onstk[u] = 0;
            comp[u] = ncomp;
            if (u == v) break;
          }
          ncomp++;
        }
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().first;
          low[parent] = std::min(low[parent], low[v]);
        }
      }
    }
  }
  return comp;
}

Rat exact_mean(long long sum, int k, const Int& scale) {
  Rat m(Int(static_cast<long>(sum)), Int(k) * scale);
  m.canonicalize();
  return m;
}

Rat exact_mean(const Rat& sum, int k, const Int&) { return sum / Rat(k); }

constexpr int kCandCap = 4096;
constexpr long long kReconImageCap = 20000000;
constexpr long long kReconStepCap = 500000;

bool block_less_rank(const AlphabetParams& p, const PeriodicPoint& x, const PeriodicPoint& y) {
  if (x.period() != y.period()) return x.period() < y.period();
  for (int i = 0; i < x.period(); ++i) {
    int a = symbol_rank(p, x.ambient(), x.block()[i]);
    int b = symbol_rank(p, y.ambient(), y.block()[i]);
    if (a != b) return a < b;
  }
  return false;
}

// Best-sum dynamic program over walk lengths 1..budget, one pass per start
// node inside its strongly connected component; diagonal entries are closed
// walks, whose means never beat the best cycle mean, so the maximum is the
// bounded-period optimum. Second phase replays the layers for the optimal
// (start, length) pairs and walks them backwards to list the witness words.
template <class W>
void solve(const SearchGraph& g, const std::vector<W>& wv, const AlphabetParams& p,
           const std::vector<Symbol>& alphabet, int budget, int max_witnesses, Rat& best,
           bool& have, std::vector<PeriodicPoint>& wits, bool& truncated) {
  int ncomp = 0;
  std::vector<int> comp = strongly_connected(g, ncomp);
  std::vector<std::vector<int>> members(ncomp), cedges(ncomp);
  std::vector<char> cyclic(ncomp, 0);
  for (int v = 0; v < g.V; ++v) members[comp[v]].push_back(v);
  for (int e = 0; e < static_cast<int>(g.efrom.size()); ++e) {
    if (comp[g.efrom[e]] != comp[g.eto[e]]) continue;
    cedges[comp[g.efrom[e]]].push_back(e);
    if (g.efrom[e] == g.eto[e]) cyclic[comp[g.efrom[e]]] = 1;
  }
  for (int c = 0; c < ncomp; ++c)
    if (members[c].size() > 1) cyclic[c] = 1;

  std::vector<int> pos(g.V, -1);
  std::vector<std::pair<int, int>> cands;  // (start node, walk length)
  bool cand_overflow = false;

  for (int c = 0; c < ncomp; ++c) {
    if (!cyclic[c]) continue;
    const auto& mem = members[c];
    const auto& ced = cedges[c];
    const int n = static_cast<int>(mem.size());
    for (int i = 0; i < n; ++i) pos[mem[i]] = i;
    std::vector<W> cur(n), nxt(n);
    std::vector<char> okc(n), okn(n);
    for (int si = 0; si < n; ++si) {
      std::fill(okc.begin(), okc.end(), 0);
      okc[si] = 1;
      cur[si] = W(0);
      for (int k = 1; k <= budget; ++k) {
        std::fill(okn.begin(), okn.end(), 0);
        for (int e : ced) {
          int a = pos[g.efrom[e]];
          if (!okc[a]) continue;
          int b = pos[g.eto[e]];
          W cand = cur[a] + wv[g.eval[e]];
          if (!okn[b] || cand > nxt[b]) {
            nxt[b] = cand;
            okn[b] = 1;
          }
        }
        if (okn[si]) {
          Rat mean = exact_mean(nxt[si], k, g.scale);
          if (!have || mean > best) {
            best = mean;
            have = true;
            cands.clear();
            cand_overflow = false;
            cands.emplace_back(mem[si], k);
          } else if (mean == best) {
            if (static_cast<int>(cands.size()) < kCandCap)
              cands.emplace_back(mem[si], k);
            else
              cand_overflow = true;
          }
        }
        std::swap(cur, nxt);
        std::swap(okc, okn);
      }
    }
    for (int m : mem) pos[m] = -1;
  }
  if (!have) throw std::logic_error("orbit search graph has no cycle");

  // Witness reconstruction, grouped by component so the reverse adjacency is
  // built once per component.
  std::sort(cands.begin(), cands.end(), [&](const auto& x, const auto& y) {
    return comp[x.first] < comp[y.first];
  });
  std::set<std::string> seen;
  size_t ci = 0;
  while (ci < cands.size() && !(truncated && static_cast<int>(wits.size()) >= max_witnesses)) {
    int c = comp[cands[ci].first];
    const auto& mem = members[c];
    const auto& ced = cedges[c];
    const int n = static_cast<int>(mem.size());
    for (int i = 0; i < n; ++i) pos[mem[i]] = i;
    std::vector<std::vector<int>> rev(n);
    for (int e : ced) rev[pos[g.eto[e]]].push_back(e);

    for (; ci < cands.size() && comp[cands[ci].first] == c; ++ci) {
      const int s = cands[ci].first;
      const int k = cands[ci].second;
      if (static_cast<long long>(k + 1) * n > kReconImageCap) {
        truncated = true;
        continue;
      }
      const int si = pos[s];
      std::vector<std::vector<W>> L(k + 1, std::vector<W>(n));
      std::vector<std::vector<char>> ok(k + 1, std::vector<char>(n, 0));
      ok[0][si] = 1;
      L[0][si] = W(0);
      for (int j = 1; j <= k; ++j) {
        for (int e : ced) {
          int a = pos[g.efrom[e]];
          if (!ok[j - 1][a]) continue;
          int b = pos[g.eto[e]];
          W cand = L[j - 1][a] + wv[g.eval[e]];
          if (!ok[j][b] || cand > L[j][b]) {
            L[j][b] = cand;
            ok[j][b] = 1;
          }
        }
      }
      if (!ok[k][si]) continue;

      // Depth-first over optimal predecessors; every completed descent is one
      // optimal closed walk, whose word is a realizable orbit.
      Word word(k);
      struct Fr {
        int j;
        int v;
        size_t ei;
      };
      std::vector<Fr> stk{{k, si, 0}};
      long long steps = 0;
      while (!stk.empty()) {
        if (++steps > kReconStepCap) {
          truncated = true;
          break;
        }
        Fr& fr = stk.back();
        if (fr.j == 0) {
          if (fr.v == si) {
            PeriodicPoint x(p, Ambient::SigmaD, word);
            std::string key = word_to_string(x.block());
            if (!seen.count(key)) {
              if (static_cast<int>(wits.size()) >= max_witnesses) {
                truncated = true;
                break;
              }
              seen.insert(key);
              wits.push_back(std::move(x));
            }
          }
          stk.pop_back();
          continue;
        }
        bool descended = false;
        const auto& R = rev[fr.v];
        while (fr.ei < R.size()) {
          int e = R[fr.ei++];
          int a = pos[g.efrom[e]];
          if (!ok[fr.j - 1][a]) continue;
          if (!(L[fr.j - 1][a] + wv[g.eval[e]] == L[fr.j][fr.v])) continue;
          word[fr.j - 1] = alphabet[g.esym[e]];
          stk.push_back({fr.j - 1, a, 0});
          descended = true;
          break;
        }
        if (!descended) stk.pop_back();
      }
    }
    for (int m : mem) pos[m] = -1;
  }
  if (cand_overflow) truncated = true;
  std::sort(wits.begin(), wits.end(), [&](const PeriodicPoint& x, const PeriodicPoint& y) {
    return block_less_rank(p, x, y);
  });
}

}  // namespace

OptimizeResult lambda_periodic(const LocallyConstantFn& f, int budget,
                               const OptimizeConfig& cfg) {
  const AlphabetParams& p = f.params();
  if (f.ambient() != Ambient::SigmaD)
    throw std::invalid_argument("optimization runs over the indexed shift");
  if (budget < 1) throw std::invalid_argument("period budget must be positive");
  if (cfg.depth_cap < -1) throw std::invalid_argument("depth cap must be -1 or nonnegative");
  if (cfg.max_states < 1 || cfg.max_witnesses < 0)
    throw std::invalid_argument("bad optimizer limits");
  const int cap = cfg.depth_cap == -1 ? budget : cfg.depth_cap;

  SearchGraph g = build_graph(f, budget, cap, cfg.max_states);
  const auto alphabet = ambient_alphabet(p, Ambient::SigmaD);

  OptimizeResult out;
  bool have = false;
  if (g.int_ok)
    solve<long long>(g, g.ivals, p, alphabet, budget, cfg.max_witnesses, out.value, have,
                     out.witnesses, out.witnesses_truncated);
  else
    solve<Rat>(g, g.vals, p, alphabet, budget, cfg.max_witnesses, out.value, have,
               out.witnesses, out.witnesses_truncated);

  if (count_words(p, f.window_len()) > cfg.max_states)
    throw resource_error("window enumeration above the optimizer state cap");
  bool first = true;
  for_each_word(p, f.window_len(), [&](const Word& w) {
    const Rat& v = f.value(w);
    if (first || v > out.upper_bound) {
      out.upper_bound = v;
      first = false;
    }
  });
  return out;
}

std::vector<PeriodicPoint> maximizer_probe(const LocallyConstantFn& f, int budget,
                                           const Rat& value_in, const Rat& tol_in,
                                           const OptimizeConfig& cfg) {
  Rat value = value_in, tol = tol_in;
  value.canonicalize();  // callers may hand over raw p/q pairs
  tol.canonicalize();
  const AlphabetParams& p = f.params();
  if (f.ambient() != Ambient::SigmaD)
    throw std::invalid_argument("optimization runs over the indexed shift");
  if (budget < 1) throw std::invalid_argument("period budget must be positive");
  Int total = 0;
  for (int n = 1; n <= budget; ++n) total += count_words(p, n);
  if (total > cfg.max_states)
    throw resource_error("orbit enumeration above the optimizer state cap");

  const Rat floor = value - tol;
  const int r = f.radius();
  std::vector<PeriodicPoint> out;
  for (int n = 1; n <= budget; ++n) {
    for_each_word(p, n, [&](const Word& w) {
      if (!periodic_admissible(p, w)) return;
      if (canonical_cycle(p, Ambient::SigmaD, w) != w) return;  // one block per orbit
      PeriodicPoint x(p, Ambient::SigmaD, w);
      Rat sum = 0;
      Word window(f.window_len());
      for (int i = 0; i < n; ++i) {
        for (int j = -r; j <= r; ++j) window[j + r] = x.at(i + j);
        sum += f.value(window);
      }
      if (sum / Rat(n) >= floor) out.push_back(std::move(x));
    });
  }
  std::sort(out.begin(), out.end(), [&](const PeriodicPoint& x, const PeriodicPoint& y) {
    return block_less_rank(p, x, y);
  });
  return out;
}

LocallyConstantFn degenerate_fn(const std::vector<PeriodicPoint>& orbits, int radius) {
  if (orbits.empty()) throw std::invalid_argument("need at least one orbit");
  if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
  const AlphabetParams p = orbits.front().params();
  const Ambient amb = orbits.front().ambient();
  std::map<std::string, Rat> table;
  for (const PeriodicPoint& x : orbits) {
    if (!(x.params() == p) || x.ambient() != amb)
      throw std::invalid_argument("orbits live in different shifts");
    for (int i = 0; i < x.period(); ++i) {
      Word window(2 * radius + 1);
      for (int j = -radius; j <= radius; ++j) window[j + radius] = x.at(i + j);
      table[word_to_string(window)] = Rat(0);
    }
  }
  return LocallyConstantFn(p, amb, radius, std::move(table), Rat(-1));
}

ProbValue lambda_markov_lower(const LocallyConstantFn& f, const MeasureSpec& mu) {
  return integral(mu, f);
}

}  // namespace dyckm
