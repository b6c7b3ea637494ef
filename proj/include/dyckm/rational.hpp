#ifndef DYCKM_RATIONAL_HPP
#define DYCKM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace dyckm {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "3/4", "2", "0.25", "-1.5e-2" into an exact rational.
Rat parse_rational(const std::string& text);

// Canonical "p/q" (or "p" when q == 1).
std::string rational_to_string(const Rat& q);

double to_double(const Rat& q);

// Decimal rendering with the given number of significant digits after the
// point, round-half-even; deterministic across platforms.
std::string rational_to_decimal(const Rat& q, int digits);

// Solves the stationary equations pi * P = pi, sum pi = 1 for a row-stochastic
// rational kernel by Gaussian elimination. Requires a unique solution
// (irreducible kernel); throws std::invalid_argument otherwise.
std::vector<Rat> stationary_distribution(const std::vector<std::vector<Rat>>& kernel);

}  // namespace dyckm

#endif
