#include "dyckm/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace dyckm {

namespace {

bool valid_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den))
      throw std::invalid_argument("bad rational literal: " + text);
    Rat q{Int(num, 10), Int(den, 10)};  // base 0 would read a leading zero as octal
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
  }

  // Decimal / scientific form, e.g. "0.25", "-1.5e-2".
  std::string mantissa = s;
  long expo = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    std::string es = s.substr(e + 1);
    if (!valid_integer(es)) throw std::invalid_argument("bad exponent: " + text);
    expo = std::strtol(es.c_str(), nullptr, 10);
  }
  std::string digits = mantissa;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    frac_digits = static_cast<long>(mantissa.size() - dot - 1);
  }
  if (digits == "+" || digits == "-") digits += "0";
  if (!valid_integer(digits)) throw std::invalid_argument("bad rational literal: " + text);

  Rat q{Int(digits, 10)};
  long shift = expo - frac_digits;
  Int pow10 = 1;
  for (long i = 0; i < std::labs(shift); ++i) pow10 *= 10;
  if (shift >= 0)
    q *= Rat(pow10);
  else
    q /= Rat(pow10);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rat& q) { return q.get_d(); }

std::string rational_to_decimal(const Rat& q, int digits) {
  if (digits < 0) digits = 0;
  bool neg = q < 0;
  Rat a = neg ? Rat(-q) : q;
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half to even on scaled numerator
  Int num = a.get_num() * scale, den = a.get_den();
  Int quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Int twice = rem * 2;
  int cmp = mpz_cmp(twice.get_mpz_t(), den.get_mpz_t());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(quot.get_mpz_t()))) quot += 1;

  std::string body = quot.get_str();
  if (digits > 0) {
    if (static_cast<int>(body.size()) <= digits)
      body.insert(0, std::string(digits + 1 - body.size(), '0'));
    body.insert(body.size() - digits, ".");
  }
  return neg && quot != 0 ? "-" + body : body;
}

std::vector<Rat> stationary_distribution(const std::vector<std::vector<Rat>>& kernel) {
  const std::size_t n = kernel.size();
  if (n == 0) throw std::invalid_argument("empty kernel");
  for (const auto& row : kernel) {
    if (row.size() != n) throw std::invalid_argument("kernel is not square");
    Rat sum = 0;
    for (const auto& x : row) {
      if (x < 0) throw std::invalid_argument("negative kernel entry");
      sum += x;
    }
    if (sum != 1) throw std::invalid_argument("kernel row does not sum to 1");
  }

  // Unknowns pi_0..pi_{n-1}; equations: pi (P - I) = 0 columnwise, plus sum = 1.
  std::vector<std::vector<Rat>> m(n + 1, std::vector<Rat>(n + 1, Rat(0)));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[j][i] = kernel[i][j];
    m[j][j] -= 1;
  }
  for (std::size_t i = 0; i < n; ++i) m[n][i] = 1;
  m[n][n] = 1;  // rhs of the normalization row; other rows have rhs 0

  // Gaussian elimination with partial (first nonzero) pivoting.
  std::vector<int> pivot_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row <= n; ++col) {
    std::size_t pr = row;
    while (pr <= n && m[pr][col] == 0) ++pr;
    if (pr > n) continue;
    std::swap(m[pr], m[row]);
    Rat inv = m[row][col];
    for (std::size_t j = col; j <= n; ++j) m[row][j] /= inv;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (std::size_t j = col; j <= n; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  if (row != n) throw std::invalid_argument("kernel has no unique stationary vector");
  for (std::size_t i = row; i <= n; ++i)
    if (m[i][n] != 0) throw std::invalid_argument("inconsistent stationary system");

  std::vector<Rat> pi(n);
  for (std::size_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] < 0) throw std::invalid_argument("kernel has no unique stationary vector");
    pi[col] = m[pivot_of_col[col]][n];
    if (pi[col] < 0) throw std::invalid_argument("stationary vector not nonnegative");
  }
  return pi;
}

}  // namespace dyckm
