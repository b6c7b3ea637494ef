#ifndef DYCKM_FN_HPP
#define DYCKM_FN_HPP

#include <map>
#include <string>

#include "dyckm/alphabet.hpp"
#include "dyckm/rational.hpp"

namespace dyckm {

// A locally constant observable: value depends on the window of radius r
// around the current coordinate. Stored as a finite table over (2r+1)-windows
// plus a default for every window not listed.
class LocallyConstantFn {
 public:
  LocallyConstantFn(AlphabetParams params, Ambient ambient, int radius,
                    std::map<std::string, Rat> table, Rat default_value);

  const AlphabetParams& params() const { return params_; }
  Ambient ambient() const { return ambient_; }
  int radius() const { return radius_; }
  int window_len() const { return 2 * radius_ + 1; }
  const std::map<std::string, Rat>& table() const { return table_; }
  const Rat& default_value() const { return default_; }

  // Value on a window of length exactly 2r+1.
  const Rat& value(const Word& window) const;

 private:
  AlphabetParams params_;
  Ambient ambient_;
  int radius_;
  std::map<std::string, Rat> table_;  // keys are canonical token strings
  Rat default_;
};

// Indicator of seeing `w` at consecutive coordinates, expressed with the
// smallest radius whose window contains w (w anchored at the window end).
// Integrating it against a shift-invariant measure gives the cylinder mass.
LocallyConstantFn indicator_fn(const AlphabetParams& p, Ambient ambient, const Word& w);

}  // namespace dyckm

#endif
