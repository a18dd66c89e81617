#include "shiftlab/algebraic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include <mpfr.h>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

std::string trim(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

Rational parse_decimal(std::string_view text) {
  // [-]digits[.digits]
  std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty number");
  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    ++i;
  }
  BigInt numerator = 0, denominator = 1;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      numerator = numerator * 10 + (c - '0');
      if (seen_dot) denominator *= 10;
    } else {
      throw ConfigError("invalid decimal literal '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) throw ConfigError("invalid decimal literal '" + std::string(text) + "'");
  Rational r(numerator, denominator);
  return negative ? Rational(-r) : r;
}

BigInt floor_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

/// RAII wrapper over mpfr_t at a fixed precision.
class Mp {
public:
  explicit Mp(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Mp(const Mp& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Mp& operator=(const Mp& other) {
    if (this != &other) mpfr_set(v_, other.v_, MPFR_RNDN);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

private:
  mpfr_t v_;
};

void set_bigint(Mp& dst, const BigInt& value) {
  mpfr_set_str(dst.get(), value.str().c_str(), 10, MPFR_RNDN);
}

void set_rational(Mp& dst, const Rational& value, mpfr_prec_t bits) {
  Mp den(bits);
  set_bigint(dst, boost::multiprecision::numerator(value));
  set_bigint(den, boost::multiprecision::denominator(value));
  mpfr_div(dst.get(), dst.get(), den.get(), MPFR_RNDN);
}

/// Elements of Q[x]/(P), coefficients in increasing degree.
class FieldArithmetic {
public:
  explicit FieldArithmetic(const IntPolynomial& p) : poly_(p), degree_(p.degree()) {}

  std::vector<Rational> one() const {
    std::vector<Rational> e(static_cast<std::size_t>(degree_), Rational(0));
    e[0] = 1;
    return e;
  }

  std::vector<Rational> times_x(const std::vector<Rational>& e) const {
    const auto d = static_cast<std::size_t>(degree_);
    std::vector<Rational> out(d, Rational(0));
    for (std::size_t i = 0; i + 1 < d; ++i) out[i + 1] = e[i];
    const Rational top = e[d - 1];
    if (top != 0) {
      const auto& a = poly_.coefficients();
      for (std::size_t i = 0; i < d; ++i) out[i] -= top * Rational(a[i], a[d]);
    }
    return out;
  }

  static bool is_zero(const std::vector<Rational>& e) {
    return std::all_of(e.begin(), e.end(), [](const Rational& c) { return c == 0; });
  }

  static std::string key(const std::vector<Rational>& e) {
    std::string k;
    for (const auto& c : e) k += c.str() + ";";
    return k;
  }

private:
  IntPolynomial poly_;
  int degree_;
};

struct Numeric {
  mpfr_prec_t bits;
  std::vector<Mp> powers;  // beta^0 .. beta^{d-1}
  int degree;

  /// Value of e at beta, and an upper bound on its absolute error.
  std::pair<Mp, Mp> evaluate(const std::vector<Rational>& e) const {
    Mp value(bits), magnitude(bits), term(bits), coef(bits);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      set_rational(coef, e[i], bits);
      mpfr_mul(term.get(), coef.get(), powers[i].get(), MPFR_RNDN);
      mpfr_add(value.get(), value.get(), term.get(), MPFR_RNDN);
      mpfr_abs(term.get(), term.get(), MPFR_RNDN);
      mpfr_add(magnitude.get(), magnitude.get(), term.get(), MPFR_RNDN);
    }
    // rounding in each product and sum, plus the error in beta itself scaled by degree
    Mp bound(bits);
    mpfr_mul_ui(bound.get(), magnitude.get(), static_cast<unsigned long>(degree + 4) * 4, MPFR_RNDU);
    mpfr_div_2si(bound.get(), bound.get(), bits, MPFR_RNDU);
    Mp floor_bound(bits);
    mpfr_set_ui_2exp(floor_bound.get(), 1, -(bits - 8), MPFR_RNDU);
    mpfr_max(bound.get(), bound.get(), floor_bound.get(), MPFR_RNDU);
    return {value, bound};
  }
};

Mp refine_root(const IntPolynomial& p, long double start, mpfr_prec_t bits) {
  const IntPolynomial dp = p.derivative();
  auto eval = [&](const IntPolynomial& poly, const Mp& x) {
    Mp acc(bits), c(bits);
    const auto& a = poly.coefficients();
    for (std::size_t i = a.size(); i-- > 0;) {
      mpfr_mul(acc.get(), acc.get(), x.get(), MPFR_RNDN);
      set_bigint(c, a[i]);
      mpfr_add(acc.get(), acc.get(), c.get(), MPFR_RNDN);
    }
    return acc;
  };
  Mp x(bits);
  mpfr_set_ld(x.get(), start, MPFR_RNDN);
  Mp step(bits), tol(bits);
  mpfr_set_ui_2exp(tol.get(), 1, -(bits - 6), MPFR_RNDN);
  for (int iter = 0; iter < 400; ++iter) {
    Mp f = eval(p, x);
    Mp df = eval(dp, x);
    if (mpfr_zero_p(df.get())) throw ConfigError("root(): derivative vanishes; beta must be a simple root");
    mpfr_div(step.get(), f.get(), df.get(), MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    mpfr_abs(step.get(), step.get(), MPFR_RNDN);
    if (mpfr_cmp(step.get(), tol.get()) <= 0) return x;
  }
  throw ConfigError("root(): Newton iteration did not converge");
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0);
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty polynomial");
  std::map<int, BigInt> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    BigInt coef = 0;
    bool has_coef = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = coef * 10 + (s[i] - '0');
      has_coef = true;
      ++i;
    }
    if (i < s.size() && s[i] == '*') ++i;
    int power = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        int e = 0;
        bool digits = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          e = e * 10 + (s[i] - '0');
          digits = true;
          ++i;
        }
        if (!digits) throw ConfigError("polynomial: missing exponent in '" + s + "'");
        power = e;
      }
      if (!has_coef) coef = 1;
    } else if (!has_coef) {
      throw ConfigError("polynomial: cannot parse '" + s + "'");
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-')
      throw ConfigError("polynomial: unexpected '" + std::string(1, s[i]) + "' in '" + s + "'");
    terms[power] += sign * coef;
  }
  const int deg = terms.rbegin()->first;
  std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1, BigInt(0));
  for (const auto& [pw, v] : terms) c[static_cast<std::size_t>(pw)] = v;
  return IntPolynomial(std::move(c));
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + Rational(coeffs_[i]);
  return acc;
}

long double IntPolynomial::evaluate(long double x) const {
  long double acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i].convert_to<long double>();
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return IntPolynomial({0});
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<int>(i);
  return IntPolynomial(std::move(d));
}

std::string IntPolynomial::str() const {
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    if (mag != 1 || i == 0) out += mag.str();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

BetaSpec parse_beta_spec(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty beta specification");
  BetaSpec spec;
  spec.text = s;
  if (s == "golden") {
    spec.polynomial = IntPolynomial({-1, -1, 1});
    spec.near = 1.6180339887498948482L;
    return spec;
  }
  if (s.rfind("root(", 0) == 0) {
    if (s.back() != ')') throw ConfigError("root(): missing closing parenthesis");
    const std::string body = s.substr(5, s.size() - 6);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ConfigError("root(): expected 'root(<poly>, near=<value>)'");
    spec.polynomial = IntPolynomial::parse(body.substr(0, comma));
    std::string rest = body.substr(comma + 1);
    if (rest.rfind("near=", 0) != 0) throw ConfigError("root(): expected near=<value>");
    spec.near = parse_decimal(rest.substr(5)).convert_to<long double>();
    if (spec.polynomial.degree() < 1) throw ConfigError("root(): polynomial must have degree >= 1");
    return spec;
  }
  Rational value;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_decimal(s.substr(0, slash));
    const Rational den = parse_decimal(s.substr(slash + 1));
    if (den == 0) throw ConfigError("beta: zero denominator");
    value = num / den;
  } else {
    value = parse_decimal(s);
  }
  spec.rational = value;
  spec.polynomial = IntPolynomial({-boost::multiprecision::numerator(value),
                                   boost::multiprecision::denominator(value)});
  spec.near = value.convert_to<long double>();
  return spec;
}

namespace {

void finish_expansion(QuasiGreedyExpansion& out, std::vector<BigInt>& greedy, std::size_t n,
                      std::optional<std::size_t> finite_at,
                      std::optional<std::pair<std::size_t, std::size_t>> greedy_tail) {
  auto to_symbol = [&](const BigInt& d) {
    if (d < 0 || d >= out.symbols)
      throw PrecisionError("greedy digit " + d.str() + " outside 0.." + std::to_string(out.symbols - 1));
    return static_cast<Symbol>(d.convert_to<int>());
  };
  out.digits.clear();
  out.digits.reserve(n);
  if (finite_at) {
    const std::size_t m = *finite_at;
    std::vector<Symbol> block;
    for (std::size_t j = 0; j < m; ++j) block.push_back(to_symbol(j + 1 == m ? BigInt(greedy[j] - 1) : greedy[j]));
    for (std::size_t j = 0; j < n; ++j) out.digits.push_back(block[j % m]);
    out.finite_greedy_length = m;
    out.periodic_tail = std::make_pair(std::size_t{0}, m);
    return;
  }
  if (greedy_tail) {
    const auto [pre, per] = *greedy_tail;
    while (greedy.size() < n) greedy.push_back(greedy[greedy.size() - per]);
    out.periodic_tail = greedy_tail;
    (void)pre;
  }
  for (std::size_t j = 0; j < n; ++j) out.digits.push_back(to_symbol(greedy[j]));
}

}  // namespace

QuasiGreedyExpansion quasi_greedy_digits(const BetaSpec& spec, std::size_t n, unsigned precision_bits) {
  QuasiGreedyExpansion out;
  if (n == 0) throw std::invalid_argument("quasi_greedy_digits: need at least one digit");

  std::vector<BigInt> greedy;
  std::optional<std::size_t> finite_at;
  std::optional<std::pair<std::size_t, std::size_t>> tail;
  std::map<std::string, std::size_t> seen;

  std::optional<Rational> rational = spec.rational;
  mpfr_prec_t bits = 0;
  std::optional<Mp> beta_mp;

  if (!rational) {
    const long double approx = spec.near;
    const double log2b = approx > 1 ? std::log2(static_cast<double>(approx)) : 1.0;
    bits = static_cast<mpfr_prec_t>(
        std::max<double>({static_cast<double>(precision_bits), 128.0, static_cast<double>(n) * log2b + 128.0}));
    beta_mp.emplace(refine_root(spec.polynomial, spec.near, bits));
    if (mpfr_cmp_ui(beta_mp->get(), 1) <= 0) throw ConfigError("beta must exceed 1 (" + spec.text + ")");
    // an integer root is handled on the exact rational path
    Mp rounded(bits);
    mpfr_round(rounded.get(), beta_mp->get());
    const long k = mpfr_get_si(rounded.get(), MPFR_RNDN);
    if (spec.polynomial.evaluate(Rational(k)) == 0) {
      Mp diff(bits);
      mpfr_sub_si(diff.get(), beta_mp->get(), k, MPFR_RNDN);
      mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
      if (mpfr_cmp_d(diff.get(), 1e-9) < 0) rational = Rational(k);
    }
  }

  if (rational) {
    const Rational beta = *rational;
    if (beta <= 1) throw ConfigError("beta must exceed 1 (" + spec.text + ")");
    out.beta = beta.convert_to<double>();
    const BigInt fl = floor_rational(beta);
    out.symbols = static_cast<int>((Rational(fl) == beta ? fl : BigInt(fl + 1)).convert_to<long long>());
    if (out.symbols > 255) throw ConfigError("beta too large: alphabet would exceed 255 symbols");
    Rational x = 1;
    for (std::size_t j = 1; j <= n; ++j) {
      const Rational y = beta * x;
      const BigInt d = floor_rational(y);
      greedy.push_back(d);
      x = y - Rational(d);
      if (x == 0) {
        finite_at = j;
        break;
      }
      auto [it, inserted] = seen.emplace(x.str(), j);
      if (!inserted) {
        tail = std::make_pair(it->second, j - it->second);
        break;
      }
    }
    finish_expansion(out, greedy, n, finite_at, tail);
    return out;
  }

  out.precision_bits = static_cast<unsigned>(bits);
  out.beta = mpfr_get_d(beta_mp->get(), MPFR_RNDN);
  {
    Mp fl(bits);
    mpfr_floor(fl.get(), beta_mp->get());
    out.symbols = static_cast<int>(mpfr_get_si(fl.get(), MPFR_RNDN)) + 1;
    if (out.symbols > 255) throw ConfigError("beta too large: alphabet would exceed 255 symbols");
  }

  const FieldArithmetic field(spec.polynomial);
  Numeric numeric{bits, {}, spec.polynomial.degree()};
  {
    Mp power(bits);
    mpfr_set_ui(power.get(), 1, MPFR_RNDN);
    for (int i = 0; i < spec.polynomial.degree(); ++i) {
      numeric.powers.push_back(power);
      mpfr_mul(power.get(), power.get(), beta_mp->get(), MPFR_RNDN);
    }
  }

  std::vector<Rational> x = field.one();
  Mp fl(bits), frac(bits), upper(bits);
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<Rational> y = field.times_x(x);
    auto [value, bound] = numeric.evaluate(y);
    mpfr_floor(fl.get(), value.get());
    mpfr_sub(frac.get(), value.get(), fl.get(), MPFR_RNDN);
    mpfr_ui_sub(upper.get(), 1, frac.get(), MPFR_RNDN);
    const bool near_low = mpfr_cmp(frac.get(), bound.get()) <= 0;
    const bool near_high = mpfr_cmp(upper.get(), bound.get()) <= 0;
    BigInt d(mpfr_get_si(fl.get(), MPFR_RNDN));
    if (near_low || near_high) {
      const BigInt candidate = near_high ? BigInt(d + 1) : d;
      std::vector<Rational> rest = y;
      rest[0] -= Rational(candidate);
      if (!FieldArithmetic::is_zero(rest))
        throw PrecisionError("beta digit " + std::to_string(j) + " is ambiguous at " + std::to_string(bits) +
                             " bits; raise the precision or give beta exactly");
      greedy.push_back(candidate);
      finite_at = j;
      break;
    }
    greedy.push_back(d);
    y[0] -= Rational(d);
    x = std::move(y);
    auto [it, inserted] = seen.emplace(FieldArithmetic::key(x), j);
    if (!inserted) {
      tail = std::make_pair(it->second, j - it->second);
      break;
    }
  }
  finish_expansion(out, greedy, n, finite_at, tail);
  return out;
}

long double expansion_value(std::span<const Symbol> digits, long double beta) {
  long double sum = 0, scale = 1;
  for (Symbol d : digits) {
    scale /= beta;
    sum += d * scale;
  }
  return sum;
}

}  // namespace shiftlab
