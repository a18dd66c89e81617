#include "shiftlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftlab/algebraic.hpp"
#include "shiftlab/errors.hpp"

namespace shiftlab {

std::size_t PeriodicSet::fixed_points(std::size_t q) const {
  std::size_t total = 0;
  for (std::size_t d = 1; d <= q && d < count_by_period.size(); ++d)
    if (q % d == 0) total += count_by_period[d];
  return total;
}

PeriodicSet periodic_points(const LanguageOracle& language, std::size_t n, std::size_t repeat_check,
                            const EnumerationConfig& config) {
  PeriodicSet ps;
  ps.n = n;
  ps.count_by_period.assign(n + 1, 0);
  Enumerator e(language, config);
  for (std::size_t q = 1; q <= n; ++q) {
    for (const Word& w : e.layer(q)) {
      if (!is_primitive(w)) continue;
      switch (language.periodic_point(w, repeat_check)) {
        case PeriodicVerdict::admissible:
          ps.points.push_back(w);
          ++ps.count_by_period[q];
          break;
        case PeriodicVerdict::undecided:
          ps.undecided.push_back(w);
          break;
        case PeriodicVerdict::inadmissible:
          break;
      }
    }
  }
  return ps;
}

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::word_average: return "word-average";
    case MeasureKind::periodic: return "periodic";
    case MeasureKind::parry: return "parry";
  }
  return "?";
}

double EmpiricalMeasure::at(const Word& w) const {
  auto it = cylinder.find(w);
  if (it == cylinder.end()) throw std::out_of_range("cylinder " + format_word(w) + " not estimated");
  return it->second;
}

EmpiricalMeasure empirical_mme(const LanguageOracle& language, std::size_t m,
                               const std::vector<Word>& targets) {
  const FollowerAutomaton* a = language.automaton();
  if (!a) throw ConfigError("empirical measure needs an automaton for " + language.name());
  if (!a->exact_at(m))
    throw ConfigError("automaton for " + language.name() + " is exact only to length " +
                      std::to_string(*a->valid_depth) + ", depth " + std::to_string(m) + " requested");
  const std::size_t states = a->state_count();
  const auto p = static_cast<std::size_t>(a->alphabet_size);

  // forward[i][s]: words of length i ending at s; backward[j][s]: length-j continuations from s
  std::vector<std::vector<Count>> forward(m + 1, std::vector<Count>(states, 0));
  std::vector<std::vector<Count>> backward(m + 1, std::vector<Count>(states, 0));
  forward[0][static_cast<std::size_t>(a->initial)] = 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t s = 0; s < states; ++s) {
      if (forward[i][s] == 0) continue;
      for (std::size_t c = 0; c < p; ++c) {
        const auto t = a->next[s * p + c];
        if (t != FollowerAutomaton::reject) forward[i + 1][static_cast<std::size_t>(t)] += forward[i][s];
      }
    }
  std::fill(backward[0].begin(), backward[0].end(), Count(1));
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t s = 0; s < states; ++s)
      for (std::size_t c = 0; c < p; ++c) {
        const auto t = a->next[s * p + c];
        if (t != FollowerAutomaton::reject) backward[j][s] += backward[j - 1][static_cast<std::size_t>(t)];
      }
  Count total = 0;
  for (const auto& c : forward[m]) total += c;

  EmpiricalMeasure out;
  out.kind = MeasureKind::word_average;
  out.depth = m;
  for (const Word& w : targets) {
    if (2 * w.size() > m)
      throw ConfigError("target " + format_word(w) + " longer than half the depth " + std::to_string(m));
    std::vector<std::int32_t> end(states);
    for (std::size_t s = 0; s < states; ++s) end[s] = a->run(w, static_cast<std::int32_t>(s));
    Count hits = 0;
    for (std::size_t k = 0; k + w.size() <= m; ++k)
      for (std::size_t s = 0; s < states; ++s)
        if (end[s] != FollowerAutomaton::reject && forward[k][s] != 0)
          hits += forward[k][s] * backward[m - k - w.size()][static_cast<std::size_t>(end[s])];
    const Rational value(hits, total * (m - w.size() + 1));
    out.cylinder[w] = total == 0 ? 0.0 : value.convert_to<double>();
  }
  return out;
}

EmpiricalMeasure periodic_measure(const PeriodicSet& ps, const std::vector<Word>& targets) {
  if (ps.points.empty()) throw ConfigError("periodic measure of an empty set Per(n)");
  EmpiricalMeasure out;
  out.kind = MeasureKind::periodic;
  out.depth = ps.n;
  for (const Word& w : targets) {
    std::size_t hits = 0;
    for (const Word& v : ps.points) {
      bool starts = true;
      for (std::size_t i = 0; i < w.size() && starts; ++i) starts = w[i] == v[i % v.size()];
      if (starts) ++hits;
    }
    out.cylinder[w] = static_cast<double>(hits) / static_cast<double>(ps.points.size());
  }
  return out;
}

ParryMeasure::ParryMeasure(const FollowerAutomaton& automaton, double tolerance, std::size_t max_iterations)
    : automaton_(automaton) {
  if (automaton.valid_depth) throw ConfigError("Parry measure needs an automaton exact at every length");
  const std::size_t n = automaton.state_count();
  const auto p = static_cast<std::size_t>(automaton.alphabet_size);
  std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t c = 0; c < p; ++c) {
      const auto t = automaton.next[s * p + c];
      if (t != FollowerAutomaton::reject) adj[s][static_cast<std::size_t>(t)] += 1;
    }

  // power iteration on A + I: same eigenvectors, and the shift removes periodicity
  auto iterate = [&](bool transpose, std::vector<double>& v) {
    v.assign(n, 1.0);
    std::vector<double> next(n);
    for (std::size_t it = 0; it < max_iterations; ++it) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = v[i];
        for (std::size_t j = 0; j < n; ++j) acc += (transpose ? adj[j][i] : adj[i][j]) * v[j];
        next[i] = acc;
      }
      const double norm = *std::max_element(next.begin(), next.end());
      if (!(norm > 0)) throw ConfigError("Parry measure: adjacency matrix is nilpotent");
      double change = 0;
      for (std::size_t i = 0; i < n; ++i) {
        next[i] /= norm;
        change = std::max(change, std::abs(next[i] - v[i]));
      }
      v.swap(next);
      iterations_ = std::max(iterations_, it + 1);
      if (change < tolerance * 1e-2) return;
    }
  };
  iterate(false, right_);
  iterate(true, left_);

  std::vector<double> ar(n, 0.0);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ar[i] += adj[i][j] * right_[j];
    num += ar[i];
    den += right_[i];
  }
  lambda_ = num / den;
  residual_ = 0;
  for (std::size_t i = 0; i < n; ++i) residual_ = std::max(residual_, std::abs(ar[i] - lambda_ * right_[i]));
  if (residual_ > tolerance * std::max(1.0, lambda_))
    throw PrecisionError("Parry measure: power iteration residual " + std::to_string(residual_) +
                         " above tolerance");
  double dot = 0;
  for (std::size_t i = 0; i < n; ++i) dot += left_[i] * right_[i];
  for (auto& x : left_) x /= dot;
}

double ParryMeasure::entropy() const { return std::log(lambda_); }

double ParryMeasure::operator()(WordView w) const {
  double sum = 0;
  for (std::size_t s = 0; s < automaton_.state_count(); ++s) {
    const auto t = automaton_.run(w, static_cast<std::int32_t>(s));
    if (t != FollowerAutomaton::reject) sum += left_[s] * right_[static_cast<std::size_t>(t)];
  }
  return sum / std::pow(lambda_, static_cast<double>(w.size()));
}

EmpiricalMeasure ParryMeasure::measure(const std::vector<Word>& targets) const {
  EmpiricalMeasure out;
  out.kind = MeasureKind::parry;
  for (const Word& w : targets) out.cylinder[w] = (*this)(w);
  return out;
}

GibbsReport gibbs_report(const LanguageOracle& language, const Decomposition& d, double entropy,
                         std::size_t n_max, std::size_t m, const EnumerationConfig& config) {
  GibbsReport r;
  r.m = m;
  r.entropy = entropy;
  Enumerator e(language, config);
  std::vector<Word> targets;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (const Word& w : e.layer(n)) targets.push_back(w);
  const EmpiricalMeasure mu = empirical_mme(language, m, targets);

  r.lower = std::numeric_limits<double>::infinity();
  r.upper = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    GibbsRow row;
    row.n = n;
    row.min_core_ratio = std::numeric_limits<double>::infinity();
    const double scale = std::exp(static_cast<double>(n) * entropy);
    for (const Word& w : e.layer(n)) {
      const double ratio = mu.at(w) * scale;
      ++row.language_words;
      if (ratio > row.max_language_ratio) {
        row.max_language_ratio = ratio;
        row.argmax = w;
      }
      if (d.core(w)) {
        ++row.core_words;
        if (ratio < row.min_core_ratio) {
          row.min_core_ratio = ratio;
          row.argmin = w;
        }
      }
    }
    if (row.core_words) r.lower = std::min(r.lower, row.min_core_ratio);
    r.upper = std::max(r.upper, row.max_language_ratio);
    r.rows.push_back(std::move(row));
  }

  // trend flags look at the second half of the rows
  const std::size_t half = r.rows.size() / 2;
  if (r.rows.size() >= 3) {
    bool falling = true, rising = true;
    for (std::size_t i = half + 1; i < r.rows.size(); ++i) {
      falling = falling && r.rows[i].min_core_ratio < r.rows[i - 1].min_core_ratio;
      rising = rising && r.rows[i].max_language_ratio > r.rows[i - 1].max_language_ratio;
    }
    r.lower_trending_to_zero = falling && r.rows.back().min_core_ratio < 0.5 * r.rows[half].min_core_ratio;
    r.upper_diverging = rising && r.rows.back().max_language_ratio > 2 * r.rows[half].max_language_ratio;
  }
  return r;
}

PeriodicEntropy entropy_from_periodic(const PeriodicSet& ps) {
  PeriodicEntropy out;
  std::size_t running = 0;
  for (std::size_t n = 1; n <= ps.n; ++n) {
    running += ps.count_by_period[n];
    const double dn = static_cast<double>(n);
    out.per.push_back(running);
    out.per_rates.push_back(running ? std::log(static_cast<double>(running)) / dn
                                    : -std::numeric_limits<double>::infinity());
    const std::size_t fix = ps.fixed_points(n);
    out.fixed.push_back(fix);
    out.fixed_rates.push_back(fix ? std::log(static_cast<double>(fix)) / dn
                                  : -std::numeric_limits<double>::infinity());
  }
  return out;
}

}  // namespace shiftlab
