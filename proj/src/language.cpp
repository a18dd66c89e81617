#include "shiftlab/language.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "shiftlab/errors.hpp"

namespace shiftlab {

double log_count(const Count& c) {
  if (c <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(c) + 1;
  if (bits <= 1000) return std::log(c.convert_to<double>());
  return log(boost::multiprecision::cpp_bin_float_50(c)).convert_to<double>();
}

std::int32_t FollowerAutomaton::run(WordView w, std::int32_t from) const noexcept {
  std::int32_t state = from;
  for (Symbol s : w) {
    state = step(state, s);
    if (state == reject) return reject;
  }
  return state;
}

FollowerAutomaton determinize(const PrefixNfa& nfa, std::size_t max_states) {
  using Subset = std::vector<std::int32_t>;
  auto normalize = [](Subset s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  };

  FollowerAutomaton dfa;
  dfa.alphabet_size = nfa.alphabet_size;
  const auto p = static_cast<std::size_t>(nfa.alphabet_size);

  std::map<Subset, std::int32_t> index;
  std::vector<Subset> subsets;
  Subset start = normalize(nfa.initial);
  if (start.empty()) throw std::invalid_argument("determinize: empty initial set");
  index.emplace(start, 0);
  subsets.push_back(start);
  dfa.initial = 0;

  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    dfa.next.resize((cur + 1) * p, FollowerAutomaton::reject);
    for (std::size_t a = 0; a < p; ++a) {
      Subset succ;
      for (std::int32_t q : subsets[cur]) {
        const auto& targets = nfa.delta[static_cast<std::size_t>(q)][a];
        succ.insert(succ.end(), targets.begin(), targets.end());
      }
      if (succ.empty()) continue;
      succ = normalize(std::move(succ));
      auto [it, inserted] = index.emplace(succ, static_cast<std::int32_t>(subsets.size()));
      if (inserted) {
        if (subsets.size() >= max_states)
          throw BudgetExceeded("determinize: more than " + std::to_string(max_states) + " states");
        subsets.push_back(std::move(succ));
      }
      dfa.next[cur * p + a] = it->second;
    }
  }
  return dfa;
}

LanguageOracle::LanguageOracle(std::string name, Alphabet alphabet, WordPredicate contains,
                               std::string fingerprint)
    : name_(std::move(name)),
      alphabet_(alphabet),
      contains_(std::move(contains)),
      fingerprint_(std::move(fingerprint)) {}

LanguageOracle& LanguageOracle::with_automaton(FollowerAutomaton automaton) {
  if (automaton.alphabet_size != alphabet_.size())
    throw std::invalid_argument("automaton alphabet does not match language alphabet");
  automaton_ = std::make_shared<const FollowerAutomaton>(std::move(automaton));
  return *this;
}

LanguageOracle& LanguageOracle::with_periodic_test(PeriodicTest test) {
  periodic_ = std::move(test);
  return *this;
}

PeriodicVerdict LanguageOracle::periodic_point(WordView primitive, std::size_t repeat_check) const {
  if (periodic_) return periodic_(primitive);
  if (primitive.empty()) return PeriodicVerdict::inadmissible;
  if (automaton_ && !automaton_->valid_depth) {
    // a finite exact automaton decides w^infinity: iterate runs of w until a state repeats
    std::vector<char> seen(automaton_->state_count(), 0);
    std::int32_t state = automaton_->initial;
    while (!seen[static_cast<std::size_t>(state)]) {
      seen[static_cast<std::size_t>(state)] = 1;
      state = automaton_->run(primitive, state);
      if (state == FollowerAutomaton::reject) return PeriodicVerdict::inadmissible;
    }
    return PeriodicVerdict::admissible;
  }
  const std::size_t times = std::max<std::size_t>(2, repeat_check / primitive.size());
  return contains(repeat(primitive, times)) ? PeriodicVerdict::admissible
                                            : PeriodicVerdict::inadmissible;
}

LanguageOracle full_shift(int symbols) {
  const Alphabet alphabet(symbols);
  LanguageOracle language("full-" + std::to_string(symbols), alphabet,
                          [alphabet](WordView w) { return alphabet.admits(w); },
                          "full:" + std::to_string(symbols));
  FollowerAutomaton a;
  a.alphabet_size = symbols;
  a.next.assign(static_cast<std::size_t>(symbols), 0);
  language.with_automaton(std::move(a));
  language.with_periodic_test([](WordView) { return PeriodicVerdict::admissible; });
  return language;
}

namespace {

std::vector<Word> extend_chunk(const LanguageOracle& language, std::span<const Word> parents) {
  std::vector<Word> out;
  const int p = language.alphabet().size();
  Word candidate;
  for (const Word& w : parents) {
    candidate = w;
    candidate.push_back(0);
    for (int a = 0; a < p; ++a) {
      candidate.back() = static_cast<Symbol>(a);
      if (language.contains(candidate)) out.push_back(candidate);
    }
  }
  return out;
}

}  // namespace

Enumerator::Enumerator(LanguageOracle language, EnumerationConfig config)
    : language_(std::move(language)), config_(config) {
  layers_.push_back({Word{}});
}

const std::vector<Word>& Enumerator::layer(std::size_t n) {
  while (layers_.size() <= n) {
    const std::vector<Word>& prev = layers_.back();
    std::vector<Word> next;
    const unsigned threads = std::max(1u, config_.threads);
    if (threads == 1 || prev.size() < 4096) {
      next = extend_chunk(language_, prev);
    } else {
      std::vector<std::vector<Word>> parts(threads);
      {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (prev.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
          const std::size_t lo = std::min(prev.size(), t * chunk);
          const std::size_t hi = std::min(prev.size(), lo + chunk);
          pool.emplace_back([&, t, lo, hi] {
            parts[t] = extend_chunk(language_, std::span<const Word>(prev).subspan(lo, hi - lo));
          });
        }
      }
      for (auto& part : parts) next.insert(next.end(), std::make_move_iterator(part.begin()),
                                           std::make_move_iterator(part.end()));
    }
    if (next.size() > config_.max_words)
      throw BudgetExceeded("enumeration budget exceeded at length " +
                           std::to_string(layers_.size()) + ": " + std::to_string(next.size()) +
                           " words > " + std::to_string(config_.max_words));
    layers_.push_back(std::move(next));
  }
  return layers_[n];
}

std::vector<Word> enumerate(const LanguageOracle& language, std::size_t n,
                            const EnumerationConfig& config) {
  Enumerator e(language, config);
  return e.layer(n);
}

void for_each_layer(const LanguageOracle& language, std::size_t n,
                    const std::function<void(std::size_t, const std::vector<Word>&)>& visit,
                    const EnumerationConfig& config) {
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<Word> next = extend_chunk(language, layer);
    if (next.size() > config.max_words)
      throw BudgetExceeded("enumeration budget exceeded at length " + std::to_string(len) + ": " +
                           std::to_string(next.size()) + " words > " + std::to_string(config.max_words));
    layer = std::move(next);
    visit(len, layer);
  }
}

std::vector<Count> count_dp_series(const LanguageOracle& language, std::size_t n) {
  const FollowerAutomaton* a = language.automaton();
  if (!a) throw std::invalid_argument("count_dp: language '" + language.name() + "' has no automaton");
  if (!a->exact_at(n))
    throw std::out_of_range("count_dp: automaton for '" + language.name() + "' is exact only to length " +
                            std::to_string(*a->valid_depth));
  const std::size_t states = a->state_count();
  const auto p = static_cast<std::size_t>(a->alphabet_size);
  std::vector<Count> paths(states, 0), next(states);
  paths[static_cast<std::size_t>(a->initial)] = 1;
  std::vector<Count> out;
  out.reserve(n);
  for (std::size_t len = 1; len <= n; ++len) {
    std::fill(next.begin(), next.end(), Count(0));
    for (std::size_t s = 0; s < states; ++s) {
      if (paths[s] == 0) continue;
      for (std::size_t c = 0; c < p; ++c) {
        const std::int32_t t = a->next[s * p + c];
        if (t != FollowerAutomaton::reject) next[static_cast<std::size_t>(t)] += paths[s];
      }
    }
    paths.swap(next);
    Count total = 0;
    for (const auto& c : paths) total += c;
    out.push_back(std::move(total));
  }
  return out;
}

Count count_dp(const LanguageOracle& language, std::size_t n) {
  if (n == 0) return 1;
  return count_dp_series(language, n).back();
}

std::vector<Count> count_series(const LanguageOracle& language, std::size_t n,
                                const EnumerationConfig& config) {
  const FollowerAutomaton* a = language.automaton();
  if (a && a->exact_at(n)) return count_dp_series(language, n);
  Enumerator e(language, config);
  std::vector<Count> out;
  out.reserve(n);
  for (std::size_t len = 1; len <= n; ++len) out.emplace_back(e.layer(len).size());
  return out;
}

GrowthEstimate growth_estimate(std::span<const Count> counts) {
  GrowthEstimate g;
  g.counts.assign(counts.begin(), counts.end());
  g.rates.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw std::invalid_argument("growth_estimate: negative count");
    if (counts[i] == 0) g.zero_lengths.push_back(i + 1);
    g.rates.push_back(log_count(counts[i]) / static_cast<double>(i + 1));
  }
  const std::size_t N = g.rates.size();
  g.limsup_proxy = -std::numeric_limits<double>::infinity();
  const std::size_t window = (N + 2) / 3;
  for (std::size_t i = N - window; i < N; ++i) g.limsup_proxy = std::max(g.limsup_proxy, g.rates[i]);
  return g;
}

AxiomCheck check_language_axioms(const LanguageOracle& language, std::size_t n,
                                 const EnumerationConfig& config) {
  AxiomCheck result;
  Enumerator e(language, config);
  for (std::size_t len = 1; len <= n; ++len) {
    e.layer(len + 1);  // materialize first: layer() may reallocate
    const auto& layer = e.layer(len);
    const auto& shorter = e.layer(len - 1);
    const auto& longer = e.layer(len + 1);
    for (const Word& w : layer) {
      const WordView v(w);
      if (!std::binary_search(shorter.begin(), shorter.end(), Word(v.begin() + 1, v.end())) ||
          !std::binary_search(shorter.begin(), shorter.end(), Word(v.begin(), v.end() - 1))) {
        result.subword_closed = false;
        if (!result.witness) result.witness = w;
      }
      // layers are sorted, so w's extensions are contiguous in `longer`
      auto it = std::lower_bound(longer.begin(), longer.end(), w);
      if (it == longer.end() || it->size() != w.size() + 1 ||
          !std::equal(w.begin(), w.end(), it->begin())) {
        result.right_extendable = false;
        if (!result.witness) result.witness = w;
      }
    }
  }
  return result;
}

}  // namespace shiftlab
