#pragma once

// Test-side reference implementations. Nothing here calls into the library
// except for the Word type itself.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "shiftlab/word.hpp"

namespace oracle {

using shiftlab::Symbol;
using shiftlab::Word;
using shiftlab::WordView;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline const double phi = (1 + std::sqrt(5.0)) / 2;

/// All words of length n over p symbols, in lexicographic order.
inline std::vector<Word> all_words(std::size_t n, int p = 2) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * static_cast<std::size_t>(p));
    for (const Word& w : out)
      for (int s = 0; s < p; ++s) {
        Word x = w;
        x.push_back(static_cast<Symbol>(s));
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

inline Word w(const char* digits) {
  Word out;
  for (const char* c = digits; *c; ++c) out.push_back(static_cast<Symbol>(*c - '0'));
  return out;
}

/// No two adjacent 1s.
inline bool golden(WordView x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) return false;
    if (i + 1 < x.size() && x[i] == 1 && x[i + 1] == 1) return false;
  }
  return true;
}

inline BigInt fibonacci(std::size_t n) {  // F_1 = F_2 = 1
  BigInt a = 0, b = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt c = a + b;
    a = b;
    b = c;
  }
  return a;
}

inline BigInt lucas(std::size_t n) {  // L_1 = 1, L_2 = 3
  BigInt a = 2, b = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt c = a + b;
    a = b;
    b = c;
  }
  return a;
}

/// Greedy digits of 1 in rational base beta, then the quasi-greedy fix-up for a
/// terminating expansion.
inline std::vector<int> rational_beta_digits(const Rational& beta, std::size_t n) {
  std::vector<int> d;
  Rational x = 1;
  std::optional<std::size_t> finite;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational y = beta * x;
    const BigInt f = boost::multiprecision::numerator(y) / boost::multiprecision::denominator(y);
    d.push_back(static_cast<int>(f));
    x = y - Rational(f);
    if (x == 0) {
      finite = j + 1;
      break;
    }
  }
  if (!finite) return d;
  std::vector<int> period(d.begin(), d.end());
  period.back() -= 1;
  std::vector<int> out;
  while (out.size() < n) out.push_back(period[out.size() % period.size()]);
  return out;
}

/// Every suffix of x is <= the prefix of w of the same length.
inline bool beta_admissible(WordView x, const std::vector<int>& wdigits) {
  for (std::size_t k = 0; k < x.size(); ++k)
    for (std::size_t i = k; i < x.size(); ++i) {
      const int d = wdigits.at(i - k);
      if (x[i] < d) break;
      if (x[i] > d) return false;
    }
  return true;
}

/// S-gap membership by scanning runs. With `bounded_boundary`, boundary runs and
/// all-zero words may not exceed max S.
inline bool sgap(WordView x, const std::set<std::size_t>& s, bool bounded_boundary) {
  const std::size_t max_s = s.empty() ? 0 : *s.rbegin();
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) return false;
    if (x[i] == 1) ones.push_back(i);
  }
  if (ones.empty()) return !bounded_boundary || x.size() <= max_s;
  for (std::size_t i = 1; i < ones.size(); ++i)
    if (!s.count(ones[i] - ones[i - 1] - 1)) return false;
  if (bounded_boundary) {
    if (ones.front() > max_s) return false;
    if (x.size() - 1 - ones.back() > max_s) return false;
  }
  return true;
}

/// Golden-mean Parry measure in closed form.
inline double parry_golden(WordView x) {
  if (x.empty()) return 1;
  if (!golden(x)) return 0;
  auto v = [](Symbol s) { return s == 0 ? phi : 1.0; };
  return phi * v(x.front()) * v(x.back()) / (phi * phi + 1) / std::pow(phi, static_cast<double>(x.size()));
}

/// Parry measure of a vertex shift given by a 0/1 matrix, cylinders named by vertex paths,
/// through Eigen's general eigensolver.
struct EigenParry {
  Eigen::MatrixXd a;
  Eigen::VectorXd left, right;
  double lambda = 0;

  explicit EigenParry(Eigen::MatrixXd m) : a(std::move(m)) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
    lambda = es.eigenvalues()[best].real();
    right = es.eigenvectors().col(best).real();
    Eigen::EigenSolver<Eigen::MatrixXd> et(a.transpose());
    Eigen::Index best_t = 0;
    for (Eigen::Index i = 1; i < et.eigenvalues().size(); ++i)
      if (et.eigenvalues()[i].real() > et.eigenvalues()[best_t].real()) best_t = i;
    left = et.eigenvectors().col(best_t).real();
    if (right.sum() < 0) right = -right;
    if (left.sum() < 0) left = -left;
    left /= left.dot(right);
  }

  /// mu of the vertex path x_0..x_{n-1}
  double path(const std::vector<int>& x) const {
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
      if (a(x[i], x[i + 1]) == 0) return 0;
    return left(x.front()) * right(x.back()) / std::pow(lambda, static_cast<double>(x.size() - 1));
  }
};

inline int mobius(std::size_t n) {
  std::size_t m = n, primes = 0;
  for (std::size_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return 0;
      ++primes;
    }
  if (m > 1) ++primes;
  return primes % 2 ? -1 : 1;
}

/// Points of least period q of the golden mean shift: sum_{d|q} mu(q/d) L_d.
inline long long golden_least_period(std::size_t q) {
  long long total = 0;
  for (std::size_t d = 1; d <= q; ++d) {
    if (q % d) continue;
    total += mobius(q / d) * static_cast<long long>(lucas(d));
  }
  return total;
}

}  // namespace oracle
