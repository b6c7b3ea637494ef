#include "dyckm/fn.hpp"

#include <stdexcept>

namespace dyckm {

LocallyConstantFn::LocallyConstantFn(AlphabetParams params, Ambient ambient, int radius,
                                     std::map<std::string, Rat> table, Rat default_value)
    : params_(params),
      ambient_(ambient),
      radius_(radius),
      table_(std::move(table)),
      default_(std::move(default_value)) {
  if (radius_ < 0) throw std::invalid_argument("negative radius");
  default_.canonicalize();  // callers may hand over raw p/q pairs
  for (auto& [key, val] : table_) {
    val.canonicalize();
    Word w = parse_word(params_, ambient_, key);  // validates symbols
    if (static_cast<int>(w.size()) != window_len())
      throw std::invalid_argument("table key '" + key + "' is not a window of length " +
                                  std::to_string(window_len()));
    if (word_to_string(w) != key)
      throw std::invalid_argument("table key '" + key + "' is not in canonical token form");
  }
}

const Rat& LocallyConstantFn::value(const Word& window) const {
  if (static_cast<int>(window.size()) != window_len())
    throw std::invalid_argument("window length mismatch");
  auto it = table_.find(word_to_string(window));
  return it == table_.end() ? default_ : it->second;
}

LocallyConstantFn indicator_fn(const AlphabetParams& p, Ambient ambient, const Word& w) {
  if (w.empty()) throw std::invalid_argument("indicator of the empty word");
  for (const Symbol& s : w)
    if (!symbol_in_ambient(p, ambient, s))
      throw std::invalid_argument("symbol " + symbol_token(s) + " not in " +
                                  ambient_name(ambient));
  const int len = static_cast<int>(w.size());
  const int radius = (len - 1) / 2 + (len % 2 == 0 ? 1 : 0);  // smallest r with 2r+1 >= len
  const int window = 2 * radius + 1;
  const int pad = window - len;

  // List every window ending in w; the measure of their union is the cylinder
  // mass of w by shift invariance.
  auto alphabet = ambient_alphabet(p, ambient);
  std::map<std::string, Rat> table;
  std::vector<int> idx(pad, 0);
  for (;;) {
    Word key;
    key.reserve(window);
    for (int i = 0; i < pad; ++i) key.push_back(alphabet[idx[i]]);
    key.insert(key.end(), w.begin(), w.end());
    table[word_to_string(key)] = 1;
    int pos = pad - 1;
    while (pos >= 0 && ++idx[pos] == static_cast<int>(alphabet.size())) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return LocallyConstantFn(p, ambient, radius, std::move(table), Rat(0));
}

}  // namespace dyckm
