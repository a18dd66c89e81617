#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shiftlab/word.hpp"

namespace shiftlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer polynomial, coefficients in increasing degree order.
class IntPolynomial {
public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);

  /// Parses expressions in x such as "x^2-x-1", "2*x^3 - 3x + 1".
  static IntPolynomial parse(std::string_view text);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  Rational evaluate(const Rational& x) const;
  long double evaluate(long double x) const;
  IntPolynomial derivative() const;
  std::string str() const;

private:
  std::vector<BigInt> coeffs_;
};

/// How beta was specified. Rational inputs (decimal literals, p/q) are exact;
/// roots are carried as a defining polynomial plus a nearby starting point.
struct BetaSpec {
  std::string text;
  IntPolynomial polynomial;  ///< beta is a simple root; degree 1 for rationals
  long double near = 0;
  std::optional<Rational> rational;

  bool is_rational() const noexcept { return rational.has_value(); }
};

/// Accepts "golden", decimal literals ("1.8"), fractions ("3/2"),
/// and "root(<poly in x>, near=<decimal>)". Throws ConfigError.
BetaSpec parse_beta_spec(std::string_view text);

/// Result of running the greedy beta-expansion of 1.
struct QuasiGreedyExpansion {
  std::vector<Symbol> digits;   ///< w(beta)_1 .. w(beta)_N
  double beta = 0;              ///< double approximation, for reporting
  int symbols = 2;              ///< ceil(beta)
  /// Greedy expansion terminated: x_m = 0 with this m. Then w(beta) is periodic with period m.
  std::optional<std::size_t> finite_greedy_length;
  /// (preperiod, period) of w(beta) when eventual periodicity was detected exactly.
  std::optional<std::pair<std::size_t, std::size_t>> periodic_tail;
  unsigned precision_bits = 0;  ///< 0 on the exact rational path
};

/// First N digits of w(beta), the lexicographically largest expansion of 1.
///
/// Runs x_0 = 1, d_j = floor(beta x_{j-1}), x_j = beta x_{j-1} - d_j with x_j held
/// exactly in Q[x]/(P). Floors are decided by MPFR evaluation at `precision_bits`
/// (raised to at least N log2(beta) + 128); a value that lands within the error
/// bound of an integer is settled by an exact zero test, and throws PrecisionError
/// if that is inconclusive. If some x_m = 0 the result is the periodic word
/// (d_1 .. d_{m-1} (d_m - 1))^infinity.
QuasiGreedyExpansion quasi_greedy_digits(const BetaSpec& spec, std::size_t n,
                                         unsigned precision_bits = 0);

/// sum_{j<=N} w_j beta^{-j}, evaluated in long double.
long double expansion_value(std::span<const Symbol> digits, long double beta);

}  // namespace shiftlab
