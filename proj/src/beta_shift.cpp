#include "shiftlab/beta_shift.hpp"

#include <cmath>
#include <numeric>

#include "shiftlab/errors.hpp"

namespace shiftlab {

BetaShift::BetaShift(BetaSpec spec, QuasiGreedyExpansion expansion, unsigned precision_bits)
    : spec_(std::move(spec)), expansion_(std::move(expansion)), requested_precision_(precision_bits) {}

BetaShift BetaShift::from_spec(const BetaSpec& spec, std::size_t digits, unsigned precision_bits) {
  return BetaShift(spec, quasi_greedy_digits(spec, digits, precision_bits), precision_bits);
}

BetaShift BetaShift::parse(std::string_view spec, std::size_t digits) {
  return from_spec(parse_beta_spec(spec), digits);
}

BetaShift BetaShift::with_digits(std::size_t digits) const {
  return from_spec(spec_, digits, requested_precision_);
}

double BetaShift::entropy() const { return std::log(expansion_.beta); }

bool BetaShift::digit_available(std::size_t i) const noexcept {
  return i >= 1 && (i <= expansion_.digits.size() || expansion_.periodic_tail.has_value());
}

Symbol BetaShift::digit(std::size_t i) const {
  if (i == 0) throw std::out_of_range("digit index is 1-based");
  std::size_t j = i - 1;
  if (j < expansion_.digits.size()) return expansion_.digits[j];
  if (!expansion_.periodic_tail)
    throw DigitCacheTooShort("w(beta) known to " + std::to_string(expansion_.digits.size()) +
                             " digits; digit " + std::to_string(i) + " requested");
  const auto [pre, per] = *expansion_.periodic_tail;
  j = pre + (j - pre) % per;
  return expansion_.digits[j];
}

bool BetaShift::contains(WordView w) const {
  if (!w.empty() && !digit_available(w.size()))
    throw DigitCacheTooShort("beta membership for length " + std::to_string(w.size()) + " needs " +
                             std::to_string(w.size()) + " digits, have " +
                             std::to_string(expansion_.digits.size()));
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t i = k; i < w.size(); ++i) {
      const Symbol d = digit(i - k + 1);
      if (w[i] < d) break;
      if (w[i] > d) return false;
    }
  }
  return true;
}

FollowerAutomaton BetaShift::automaton(std::size_t depth) const {
  if (depth > 0 && !digit_available(depth))
    throw DigitCacheTooShort("automaton depth " + std::to_string(depth) + " exceeds cached digits");
  FollowerAutomaton a;
  a.alphabet_size = symbols();
  const auto p = static_cast<std::size_t>(a.alphabet_size);
  a.next.assign((depth + 1) * p, FollowerAutomaton::reject);
  for (std::size_t i = 0; i < depth; ++i) {
    const Symbol w = digit(i + 1);
    for (Symbol j = 0; j < w; ++j) a.next[i * p + j] = 0;
    a.next[i * p + w] = static_cast<std::int32_t>(i + 1);
  }
  a.valid_depth = depth;
  return a;
}

std::optional<FollowerAutomaton> BetaShift::folded_automaton() const {
  if (!expansion_.periodic_tail) return std::nullopt;
  const auto [pre, per] = *expansion_.periodic_tail;
  const std::size_t states = pre + per;
  FollowerAutomaton a;
  a.alphabet_size = symbols();
  const auto p = static_cast<std::size_t>(a.alphabet_size);
  a.next.assign(states * p, FollowerAutomaton::reject);
  for (std::size_t i = 0; i < states; ++i) {
    const Symbol w = digit(i + 1);
    for (Symbol j = 0; j < w; ++j) a.next[i * p + j] = 0;
    a.next[i * p + w] = static_cast<std::int32_t>(i + 1 < states ? i + 1 : pre);
  }
  return a;
}

std::shared_ptr<const FollowerAutomaton> BetaShift::shared_automaton() const {
  if (auto folded = folded_automaton()) return std::make_shared<const FollowerAutomaton>(std::move(*folded));
  return std::make_shared<const FollowerAutomaton>(automaton(expansion_.digits.size()));
}

LanguageOracle BetaShift::language() const {
  auto a = shared_automaton();
  LanguageOracle language(
      name(), Alphabet(symbols()),
      [a](WordView w) {
        if (!a->exact_at(w.size()))
          throw DigitCacheTooShort("beta language known to length " + std::to_string(*a->valid_depth));
        return a->accepts(w);
      },
      fingerprint());
  language.with_automaton(*a);
  auto self = std::make_shared<const BetaShift>(*this);
  language.with_periodic_test([self](WordView w) { return self->periodic_point(w); });
  return language;
}

Decomposition BetaShift::decomposition() const {
  auto self = std::make_shared<const BetaShift>(*this);
  Decomposition d;
  d.name = name();
  d.prefixes = [](WordView w) { return w.empty(); };
  // runs through the unfolded graph: v_i after matching w_1..w_{i-1}
  d.core = [self](WordView w) {
    std::size_t i = 1;
    for (Symbol s : w) {
      const Symbol top = self->digit(i);
      if (s < top) i = 1;
      else if (s == top) ++i;
      else return false;
    }
    return i == 1;
  };
  d.suffixes = [self](WordView w) {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != self->digit(i + 1)) return false;
    return true;
  };
  d.gap = 0;
  d.periodic_spec = true;
  // a prefix w_1..w_i returns to v_1 once some later digit is positive
  d.tau_of_m = [self](std::size_t m) -> std::optional<std::size_t> {
    std::size_t tau = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      std::size_t l = i + 1;
      while (self->digit_available(l) && self->digit(l) == 0) ++l;
      if (!self->digit_available(l)) return std::nullopt;
      tau = std::max(tau, l - i);
    }
    return tau;
  };
  return d;
}

std::vector<Word> BetaShift::generators(std::size_t max_len) const {
  std::vector<Word> out;
  for (std::size_t i = 1; i <= max_len; ++i) {
    const Symbol w = digit(i);
    for (Symbol j = 0; j < w; ++j) {
      Word g;
      for (std::size_t l = 1; l < i; ++l) g.push_back(digit(l));
      g.push_back(j);
      out.push_back(std::move(g));
    }
  }
  return out;
}

PeriodicVerdict BetaShift::periodic_point(WordView primitive) const {
  const std::size_t q = primitive.size();
  if (q == 0) return PeriodicVerdict::inadmissible;
  std::size_t limit = expansion_.digits.size();
  if (expansion_.periodic_tail) {
    const auto [pre, per] = *expansion_.periodic_tail;
    limit = pre + std::lcm(q, per);
  }
  bool undecided = false;
  for (std::size_t k = 0; k < q; ++k) {
    bool decided = false;
    for (std::size_t i = 1; i <= limit; ++i) {
      const Symbol a = primitive[(k + i - 1) % q];
      const Symbol b = digit(i);
      if (a < b) {
        decided = true;
        break;
      }
      if (a > b) return PeriodicVerdict::inadmissible;
    }
    // equal over pre + lcm(q, per) digits means equal forever
    if (!decided && !expansion_.periodic_tail) undecided = true;
  }
  return undecided ? PeriodicVerdict::undecided : PeriodicVerdict::admissible;
}

std::string BetaShift::name() const { return "beta(" + spec_.text + ")"; }

std::string BetaShift::fingerprint() const {
  std::string f = "beta|" + spec_.text + "|" + spec_.polynomial.str() + "|" + format_word(expansion_.digits);
  if (expansion_.periodic_tail)
    f += "|tail=" + std::to_string(expansion_.periodic_tail->first) + "," +
         std::to_string(expansion_.periodic_tail->second);
  return f;
}

}  // namespace shiftlab
