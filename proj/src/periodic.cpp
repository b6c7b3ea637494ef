#include "dyckm/periodic.hpp"

#include <stdexcept>

namespace dyckm {

bool periodic_admissible(const AlphabetParams& p, const Word& block) {
  if (block.empty()) throw std::invalid_argument("empty block has no periodic orbit");
  Word square;
  square.reserve(block.size() * 2);
  square.insert(square.end(), block.begin(), block.end());
  square.insert(square.end(), block.begin(), block.end());
  return is_admissible(p, square);
}

namespace {

Word primitive_root(const Word& block) {
  const int n = static_cast<int>(block.size());
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (int i = d; i < n && ok; ++i) ok = block[i] == block[i - d];
    if (ok) return Word(block.begin(), block.begin() + d);
  }
  return block;
}

}  // namespace

Word canonical_cycle(const AlphabetParams& p, Ambient ambient, const Word& block) {
  if (block.empty()) throw std::invalid_argument("empty block");
  Word root = primitive_root(block);
  const int n = static_cast<int>(root.size());
  auto rank = [&](const Symbol& s) { return symbol_rank(p, ambient, s); };
  int best = 0;
  for (int cand = 1; cand < n; ++cand) {
    for (int i = 0; i < n; ++i) {
      int a = rank(root[(best + i) % n]), b = rank(root[(cand + i) % n]);
      if (a != b) {
        if (b < a) best = cand;
        break;
      }
    }
  }
  Word out(n);
  for (int i = 0; i < n; ++i) out[i] = root[(best + i) % n];
  return out;
}

PeriodicPoint::PeriodicPoint(AlphabetParams p, Ambient ambient, const Word& block)
    : params_(p), ambient_(ambient) {
  if (block.empty()) throw std::invalid_argument("periodic point needs a nonempty block");
  for (const Symbol& s : block)
    if (!symbol_in_ambient(p, ambient, s))
      throw std::invalid_argument("symbol " + symbol_token(s) + " not in " +
                                  ambient_name(ambient));
  if (ambient == Ambient::SigmaD && !periodic_admissible(p, block))
    throw std::invalid_argument("block " + word_to_string(block) +
                                " has no admissible periodic extension");
  block_ = canonical_cycle(p, ambient, block);
}

const Symbol& PeriodicPoint::at(long long i) const {
  const long long n = period();
  long long r = i % n;
  if (r < 0) r += n;
  return block_[static_cast<std::size_t>(r)];
}

int PeriodicPoint::period_drift() const { return drift(block_); }

Word PeriodicPoint::unroll(int n) const {
  Word out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

WordClass periodic_class(const PeriodicPoint& x) {
  int d = x.period_drift();
  if (d > 0) return WordClass::Negative;
  if (d < 0) return WordClass::Positive;
  return WordClass::Neutral;
}

std::string periodic_to_string(const PeriodicPoint& x) {
  return "(" + word_to_string(x.block()) + ")^inf";
}

}  // namespace dyckm
