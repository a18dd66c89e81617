#include "shiftlab/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

bool has_parse(const Decomposition& d, WordView w, std::size_t bound) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i <= std::min(n, bound); ++i) {
    if (!d.prefixes(w.first(i))) continue;
    for (std::size_t j = n; j >= i; --j) {
      if (n - j > bound) break;
      if (d.suffixes(w.subspan(j)) && d.core(w.subspan(i, j - i))) return true;
      if (j == 0) break;
    }
  }
  return false;
}

Word primitive_root(WordView w) {
  for (std::size_t d = 1; d < w.size(); ++d) {
    if (w.size() % d) continue;
    bool root = true;
    for (std::size_t i = d; i < w.size() && root; ++i) root = w[i] == w[i - d];
    if (root) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return Word(w.begin(), w.end());
}

}  // namespace

std::vector<Parse> parse(const Decomposition& d, WordView w) {
  std::vector<Parse> out;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i <= n; ++i) {
    if (!d.prefixes(w.first(i))) continue;
    for (std::size_t j = i; j <= n; ++j) {
      if (d.core(w.subspan(i, j - i)) && d.suffixes(w.subspan(j)))
        out.push_back(Parse{Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)),
                            Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j)),
                            Word(w.begin() + static_cast<std::ptrdiff_t>(j), w.end())});
    }
  }
  return out;
}

bool in_g_of_m(const Decomposition& d, WordView w, std::size_t m) { return has_parse(d, w, m); }

std::optional<Word> parse_cover_gap(const Decomposition& d, const LanguageOracle& language,
                                    std::size_t n, const EnumerationConfig& config) {
  std::optional<Word> gap;
  for_each_layer(language, n, [&](std::size_t, const std::vector<Word>& layer) {
    if (gap) return;
    for (const Word& w : layer)
      if (!has_parse(d, w, w.size())) {
        gap = w;
        return;
      }
  }, config);
  return gap;
}

std::vector<Word> filter_layer(const LanguageOracle& language, std::size_t n,
                               const WordPredicate& filter, const EnumerationConfig& config) {
  Enumerator e(language, config);
  std::vector<Word> out;
  for (const Word& w : e.layer(n))
    if (filter(w)) out.push_back(w);
  return out;
}

std::string to_string(SpecMode mode) {
  switch (mode) {
    case SpecMode::strict: return "S";
    case SpecMode::periodic: return "Per";
    case SpecMode::weak: return "W";
  }
  return "?";
}

SpecificationReport check_specification(const Decomposition& d, const LanguageOracle& language,
                                        const SpecificationConfig& config,
                                        const EnumerationConfig& enumeration) {
  SpecificationReport r;
  r.mode = config.mode;
  r.gap = config.gap;
  r.tuple_size = config.tuple_size;
  r.max_length = config.max_length;

  Enumerator e(language, enumeration);
  std::vector<Word> core;
  for (std::size_t len = 1; len <= config.max_length; ++len)
    for (const Word& w : e.layer(len))
      if (d.core(w)) core.push_back(w);
  r.core_words = core.size();

  std::vector<Word> connectors;
  if (config.mode == SpecMode::weak) {
    for (std::size_t len = 0; len <= config.gap; ++len)
      for (const Word& c : e.layer(len)) connectors.push_back(c);
  } else {
    connectors = e.layer(config.gap);
  }

  const bool periodic = config.mode == SpecMode::periodic;
  std::vector<std::size_t> pick;
  std::vector<Word> glued;

  // connectors for the tuple in `pick`, depth-first; fills `glued` on success
  std::function<bool(std::size_t, const Word&)> connect = [&](std::size_t i, const Word& sofar) -> bool {
    if (i == pick.size()) {
      if (!periodic) return true;
      for (const Word& c : connectors) {
        const Word x = concat(sofar, c);
        if (language.periodic_point(primitive_root(x), config.repeat_check) == PeriodicVerdict::admissible) {
          glued.push_back(c);
          return true;
        }
      }
      return false;
    }
    for (const Word& c : connectors) {
      Word next = concat(sofar, c);
      next.insert(next.end(), core[pick[i]].begin(), core[pick[i]].end());
      if (!language.contains(next)) continue;
      glued.push_back(c);
      glued.push_back(core[pick[i]]);
      if (connect(i + 1, next)) return true;
      glued.resize(glued.size() - 2);
    }
    return false;
  };

  const std::size_t first_size = periodic ? 1 : 2;
  r.passed = true;
  for (std::size_t size = first_size; size <= config.tuple_size && r.passed; ++size) {
    if (core.empty()) break;
    pick.assign(size, 0);
    while (true) {
      if (++r.tuples_checked > config.max_tuples) {
        r.budget_exceeded = true;
        r.passed = false;
        r.note = "tuple budget of " + std::to_string(config.max_tuples) + " exhausted";
        return r;
      }
      glued.clear();
      glued.push_back(core[pick[0]]);
      if (!connect(1, core[pick[0]])) {
        r.passed = false;
        for (auto k : pick) r.counterexample.push_back(core[k]);
        break;
      }
      std::size_t k = size;
      while (k > 0 && ++pick[k - 1] == core.size()) pick[--k] = 0;
      if (k == 0) break;
    }
  }
  if (r.passed && !glued.empty()) r.witness = glued;

  if (r.passed && config.gap == 0 && !core.empty()) {
    bool closed = true;
    for (std::size_t a = 0; a < core.size() && closed; ++a)
      for (std::size_t b = 0; b < core.size() && closed; ++b)
        closed = d.core(concat(core[a], core[b]));
    if (closed) r.note = "G closed under concatenation on the sample; pairwise closure covers every tuple size";
  }
  return r;
}

ConditionIIReport check_condition_II(const Decomposition& d, const LanguageOracle& language,
                                     std::size_t depth, std::size_t window_start, double threshold,
                                     const EnumerationConfig& config) {
  ConditionIIReport r;
  r.depth = depth;
  r.window_start = window_start ? window_start : depth - (depth + 2) / 3 + 1;
  if (r.window_start > depth) throw ConfigError("condition II window starts past the depth");
  for_each_layer(language, depth, [&](std::size_t n, const std::vector<Word>& layer) {
    std::size_t boundary = 0;
    for (const Word& w : layer)
      if (d.prefixes(w) || d.suffixes(w)) ++boundary;
    const double dn = static_cast<double>(n);
    r.language_counts.emplace_back(layer.size());
    r.boundary_counts.emplace_back(boundary);
    r.language_rates.push_back(log_count(r.language_counts.back()) / dn);
    r.boundary_rates.push_back(log_count(r.boundary_counts.back()) / dn);
    r.margins.push_back(r.language_rates.back() - std::max(0.0, r.boundary_rates.back()));
  }, config);
  r.min_window_margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = r.window_start; n <= depth; ++n) r.min_window_margin = std::min(r.min_window_margin, r.margins[n - 1]);
  r.verdict = r.min_window_margin >= threshold ? "evidence" : "inconclusive";
  return r;
}

ConditionIIIReport check_condition_III(const Decomposition& d, const LanguageOracle& language,
                                       std::size_t m, std::size_t tau_max, std::size_t max_length,
                                       const EnumerationConfig& config) {
  ConditionIIIReport r;
  r.m = m;
  r.tau_max = tau_max;
  r.max_length = max_length;
  if (d.tau_of_m) r.family_tau = d.tau_of_m(m);

  Enumerator e(language, config);
  std::vector<std::vector<Word>> shorter;  // shorter[l] = L_l
  for (std::size_t l = 0; l <= tau_max; ++l) shorter.push_back(e.layer(l));

  std::size_t worst = 0;
  for (std::size_t len = 0; len <= max_length; ++len) {
    const std::vector<Word> layer = e.layer(len);
    for (const Word& v : layer) {
      if (!in_g_of_m(d, v, m)) continue;
      ++r.words_checked;
      std::optional<std::size_t> best;
      for (std::size_t tau = 0; tau <= tau_max && !best; ++tau) {
        // pairs with max(|u|, |w|) == tau
        for (std::size_t lu = 0; lu <= tau && !best; ++lu)
          for (std::size_t lw = 0; lw <= tau && !best; ++lw) {
            if (std::max(lu, lw) != tau) continue;
            for (const Word& u : shorter[lu]) {
              Word uv = concat(u, v);
              for (const Word& w : shorter[lw])
                if (d.core(concat(uv, w))) {
                  best = tau;
                  break;
                }
              if (best) break;
            }
          }
      }
      if (!best) {
        r.failure = v;
        r.tau.reset();
        return r;
      }
      if (*best >= worst) {
        if (*best > worst || !r.hardest) r.hardest = v;
        worst = *best;
      }
    }
  }
  r.tau = worst;
  return r;
}

std::string to_string(Dichotomy d) {
  switch (d) {
    case Dichotomy::positive_entropy: return "positive-entropy-evidence";
    case Dichotomy::single_periodic_orbit: return "single-periodic-orbit";
    case Dichotomy::inconclusive: return "inconclusive";
  }
  return "?";
}

DichotomyReport dichotomy_diagnostic(const LanguageOracle& language, const Decomposition& d,
                                     std::size_t depth, const EnumerationConfig& config) {
  DichotomyReport r;
  r.depth = depth;
  const auto counts = count_series(language, depth, config);
  r.count = depth ? counts.back() : Count(1);

  if (r.count > depth + 1) {
    r.verdict = Dichotomy::positive_entropy;
    Enumerator e(language, config);
    std::vector<Word> core;
    for (std::size_t len = 1; len <= std::min<std::size_t>(depth, 6); ++len)
      for (const Word& w : e.layer(len))
        if (d.core(w)) core.push_back(w);
    std::sort(core.begin(), core.end(), ShortLex{});
    const std::vector<Word> connectors = e.layer(d.gap);
    auto glue = [&](const Word& a, const Word& b) {
      std::set<Word> out;
      for (const Word& c : connectors) {
        Word x = concat(concat(a, c), b);
        if (language.contains(x)) out.insert(std::move(x));
      }
      return out;
    };
    for (std::size_t j = 0; j < core.size() && !r.witness; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        const auto vw = glue(core[i], core[j]);
        const auto wv = glue(core[j], core[i]);
        if (vw.empty() || wv.empty()) continue;
        if (std::none_of(vw.begin(), vw.end(), [&](const Word& x) { return wv.count(x) > 0; })) {
          r.witness = std::make_pair(core[i], core[j]);
          break;
        }
      }
    return r;
  }

  if (depth == 0 || r.count == 0) return r;
  const auto p = r.count.convert_to<std::size_t>();
  if (p > depth) return r;
  for (std::size_t n = std::max<std::size_t>(p, 1); n <= depth; ++n)
    if (counts[n - 1] != r.count) return r;
  const auto layer = enumerate(language, p, config);
  const Word& x = layer.front();
  if (!is_primitive(x)) return r;
  std::set<Word> rotations;
  for (std::size_t k = 0; k < p; ++k) rotations.insert(rotate(x, k));
  if (rotations.size() == p && std::set<Word>(layer.begin(), layer.end()) == rotations) {
    r.verdict = Dichotomy::single_periodic_orbit;
    r.orbit = x;
  }
  return r;
}

}  // namespace shiftlab
