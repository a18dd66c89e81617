#include "shiftlab/sgap_shift.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/errors.hpp"

namespace shiftlab {

GapSet GapSet::finite(std::vector<std::size_t> elements) {
  if (elements.empty()) throw ConfigError("gap set S must be nonempty");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  GapSet s;
  s.bound_ = elements.back();
  s.finite_ = std::move(elements);
  return s;
}

GapSet GapSet::rule(const std::string& name, std::size_t cap) {
  if (name == "pow2")
    return rule(name, [](std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }, cap);
  if (name == "all") return rule(name, [](std::size_t) { return true; }, cap);
  throw ConfigError("unknown gap rule '" + name + "' (expected pow2 or all)");
}

GapSet GapSet::rule(std::string name, std::function<bool(std::size_t)> member, std::size_t cap) {
  if (cap == 0) throw ConfigError("gap rule cap must be positive");
  GapSet s;
  s.member_ = std::move(member);
  s.rule_name_ = std::move(name);
  s.bound_ = cap;
  return s;
}

bool GapSet::contains(std::size_t n) const {
  if (member_) return member_(n);
  return std::binary_search(finite_.begin(), finite_.end(), n);
}

std::vector<std::size_t> GapSet::elements(std::size_t limit) const {
  std::vector<std::size_t> out;
  if (!member_) {
    for (auto n : finite_)
      if (n <= limit) out.push_back(n);
    return out;
  }
  for (std::size_t n = 0; n <= limit; ++n)
    if (member_(n)) out.push_back(n);
  return out;
}

std::string GapSet::str() const {
  if (member_) return rule_name_ + ":" + std::to_string(bound_);
  std::string s;
  for (std::size_t i = 0; i < finite_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(finite_[i]);
  }
  return s;
}

SGapShift::SGapShift(GapSet gaps, GapBoundary boundary) : gaps_(std::move(gaps)), boundary_(boundary) {}

bool SGapShift::bounded_runs() const noexcept {
  return gaps_.is_finite() && boundary_ == GapBoundary::two_sided;
}

bool SGapShift::contains(WordView w) const {
  const std::size_t m = gaps_.bound();
  std::size_t run = 0;
  bool seen_one = false;
  for (Symbol s : w) {
    if (s > 1) return false;
    if (s == 0) {
      ++run;
      continue;
    }
    if (seen_one ? !gaps_.contains(run) : bounded_runs() && run > m) return false;
    seen_one = true;
    run = 0;
  }
  return !(bounded_runs() && run > m);
}

FollowerAutomaton SGapShift::automaton() const {
  const std::size_t m = gaps_.bound();
  const bool bounded = bounded_runs();
  const bool sink = gaps_.is_finite() && boundary_ == GapBoundary::display;
  const std::size_t leading = bounded ? m + 1 : 1;
  const std::size_t r0 = leading;
  const std::size_t states = leading + (m + 1) + (sink ? 1 : 0);
  const std::size_t sink_state = r0 + m + 1;

  FollowerAutomaton a;
  a.alphabet_size = 2;
  a.next.assign(states * 2, FollowerAutomaton::reject);
  auto set = [&](std::size_t from, int symbol, std::size_t to) {
    a.next[from * 2 + static_cast<std::size_t>(symbol)] = static_cast<std::int32_t>(to);
  };
  for (std::size_t k = 0; k < leading; ++k) {
    if (!bounded) set(k, 0, k);
    else if (k < m) set(k, 0, k + 1);
    set(k, 1, r0);
  }
  for (std::size_t r = 0; r <= m; ++r) {
    if (r < m) set(r0 + r, 0, r0 + r + 1);
    else if (sink) set(r0 + r, 0, sink_state);
    if (gaps_.contains(r)) set(r0 + r, 1, r0);
  }
  if (sink) set(sink_state, 0, sink_state);
  if (!gaps_.is_finite()) a.valid_depth = m + 1;
  return a;
}

LanguageOracle SGapShift::language() const {
  auto self = std::make_shared<const SGapShift>(*this);
  LanguageOracle language(name(), Alphabet(2), [self](WordView w) { return self->contains(w); },
                          fingerprint());
  language.with_automaton(automaton());
  language.with_periodic_test([self](WordView w) { return self->periodic_point(w); });
  return language;
}

SGapEntropy SGapShift::entropy(double tol) const {
  if (!(tol > 0)) throw ConfigError("entropy tolerance must be positive");
  SGapEntropy out;
  out.truncated = !gaps_.is_finite();
  if (gaps_.is_finite() && gaps_.elements(gaps_.bound()).size() == 1) {
    out.terms = 1;
    return out;
  }
  // sum_{n in S} x^{-n-1}; stops early once the sum is known to exceed 2
  auto series = [&](long double x, std::size_t& terms) {
    long double sum = 0;
    terms = 0;
    if (gaps_.is_finite()) {
      for (auto n : gaps_.elements(gaps_.bound())) {
        sum += std::pow(x, -static_cast<long double>(n) - 1);
        ++terms;
      }
      return sum;
    }
    const long double tail_tol = static_cast<long double>(tol) * 1e-3L;
    long double power = 1 / x;  // x^{-n-1}
    for (std::size_t n = 0; n < 50'000'000; ++n, power /= x) {
      if (gaps_.contains(n)) {
        sum += power;
        ++terms;
      }
      if (sum > 2) break;
      if (power / (x - 1) < tail_tol) break;
    }
    return sum;
  };
  long double lo = 1, hi = 2;
  std::size_t terms = 0;
  while (hi - lo > static_cast<long double>(tol)) {
    const long double mid = (lo + hi) / 2;
    if (series(mid, terms) > 1) lo = mid;
    else hi = mid;
  }
  const long double lambda = (lo + hi) / 2;
  out.lambda = static_cast<double>(lambda);
  out.log_lambda = static_cast<double>(std::log(lambda));
  out.residual = static_cast<double>(1 - series(lambda, terms));
  out.terms = terms;
  return out;
}

Decomposition SGapShift::decomposition() const {
  auto gaps = std::make_shared<const GapSet>(gaps_);
  Decomposition d;
  d.name = name();
  d.prefixes = [gaps](WordView w) {
    if (w.empty()) return true;
    if (w.back() != 1) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] != 0) return false;
    return !gaps->contains(w.size() - 1);
  };
  d.core = [gaps](WordView w) {
    if (w.empty()) return true;
    if (w.back() != 1) return false;
    std::size_t run = 0;
    for (Symbol s : w) {
      if (s == 0) {
        ++run;
      } else if (s == 1) {
        if (!gaps->contains(run)) return false;
        run = 0;
      } else {
        return false;
      }
    }
    return true;
  };
  d.suffixes = [](WordView w) { return std::all_of(w.begin(), w.end(), [](Symbol s) { return s == 0; }); };
  d.gap = 0;
  d.periodic_spec = true;
  return d;
}

std::vector<Word> SGapShift::generators(std::size_t max_len) const {
  std::vector<Word> out;
  if (max_len == 0) return out;
  for (auto s : gaps_.elements(max_len - 1)) {
    Word g(s, 0);
    g.push_back(1);
    out.push_back(std::move(g));
  }
  return out;
}

PeriodicVerdict SGapShift::periodic_point(WordView primitive) const {
  const std::size_t q = primitive.size();
  if (q == 0) return PeriodicVerdict::inadmissible;
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < q; ++i) {
    if (primitive[i] > 1) return PeriodicVerdict::inadmissible;
    if (primitive[i] == 1) ones.push_back(i);
  }
  if (ones.empty()) return bounded_runs() ? PeriodicVerdict::inadmissible : PeriodicVerdict::admissible;
  for (std::size_t j = 0; j < ones.size(); ++j) {
    const std::size_t here = ones[j];
    const std::size_t next = j + 1 < ones.size() ? ones[j + 1] : ones[0] + q;
    if (!gaps_.contains(next - here - 1)) return PeriodicVerdict::inadmissible;
  }
  return PeriodicVerdict::admissible;
}

std::string SGapShift::name() const {
  return "sgap(" + gaps_.str() + ")" + (boundary_ == GapBoundary::display ? "-display" : "");
}

std::string SGapShift::fingerprint() const {
  return "sgap|" + gaps_.str() + "|" + (boundary_ == GapBoundary::display ? "display" : "two-sided");
}

std::optional<MinGap> min_gap(const LanguageOracle& language, WordView u, WordView w,
                              std::size_t t_max, const EnumerationConfig& config) {
  Enumerator e(language, config);
  Word candidate;
  for (std::size_t t = 0; t <= t_max; ++t) {
    for (const Word& v : e.layer(t)) {
      candidate.assign(u.begin(), u.end());
      candidate.insert(candidate.end(), v.begin(), v.end());
      candidate.insert(candidate.end(), w.begin(), w.end());
      if (language.contains(candidate)) return MinGap{t, v};
    }
  }
  return std::nullopt;
}

}  // namespace shiftlab
