#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/language.hpp"

namespace shiftlab {

/// A language split as C^p . G . C^s, each piece given by a membership oracle.
///
/// All three oracles must accept the empty word. `gap` is the specification gap
/// size claimed for G; `periodic_spec` claims the periodic variant.
struct Decomposition {
  std::string name;
  WordPredicate prefixes;  ///< C^p
  WordPredicate core;      ///< G
  WordPredicate suffixes;  ///< C^s
  std::size_t gap = 0;
  bool periodic_spec = false;
  /// Family-supplied extension bound for G(M), when the family knows one.
  std::function<std::optional<std::size_t>(std::size_t)> tau_of_m;
};

struct Parse {
  Word prefix;
  Word core;
  Word suffix;
  friend bool operator==(const Parse&, const Parse&) = default;
};

/// Every (u, v, s) with w = uvs, u in C^p, v in G, s in C^s. Empty means w is not covered.
std::vector<Parse> parse(const Decomposition& d, WordView w);

/// w in G(M): some parse has |u| <= M and |s| <= M.
bool in_g_of_m(const Decomposition& d, WordView w, std::size_t m);

/// First word of L_1..L_n without a parse, if any.
std::optional<Word> parse_cover_gap(const Decomposition& d, const LanguageOracle& language,
                                    std::size_t n, const EnumerationConfig& config = {});

/// Words of L_n accepted by `filter`, in lexicographic order.
std::vector<Word> filter_layer(const LanguageOracle& language, std::size_t n,
                               const WordPredicate& filter, const EnumerationConfig& config = {});

enum class SpecMode {
  strict,    ///< connectors of length exactly t
  periodic,  ///< strict, and the glued word x must give a point x^infinity
  weak,      ///< connectors of length at most t
};

std::string to_string(SpecMode mode);

struct SpecificationReport {
  SpecMode mode = SpecMode::strict;
  std::size_t gap = 0;
  std::size_t tuple_size = 0;
  std::size_t max_length = 0;
  std::size_t core_words = 0;       ///< #G_1 + ... + #G_{max_length}
  std::size_t tuples_checked = 0;
  bool passed = false;
  bool budget_exceeded = false;
  std::vector<Word> counterexample;  ///< failing tuple, when one was found
  std::optional<std::vector<Word>> witness;  ///< w^1 v^1 w^2 ... for the last tuple checked
  std::string note;
};

struct SpecificationConfig {
  std::size_t max_length = 6;  ///< n_max
  std::size_t tuple_size = 3;  ///< m
  std::size_t gap = 0;         ///< t
  SpecMode mode = SpecMode::strict;
  std::size_t max_tuples = 20'000'000;
  std::size_t repeat_check = 64;  ///< depth for periodic-point checks without an exact test
};

/// Searches, for every tuple (w^1..w^j), j <= m, of G-words of length 1..n_max, connectors
/// v^i with which w^1 v^1 w^2 ... w^j lies in L. In periodic mode each tuple also needs a
/// trailing connector v^j such that (w^1 v^1 ... w^j v^j)^infinity is a point.
SpecificationReport check_specification(const Decomposition& d, const LanguageOracle& language,
                                        const SpecificationConfig& config,
                                        const EnumerationConfig& enumeration = {});

struct ConditionIIReport {
  std::size_t depth = 0;
  std::size_t window_start = 0;
  std::vector<Count> language_counts;
  std::vector<Count> boundary_counts;  ///< #(C^p u C^s)_n
  std::vector<double> language_rates;
  std::vector<double> boundary_rates;  ///< -infinity where the count is zero
  std::vector<double> margins;         ///< language rate minus boundary rate (zero count as rate 0)
  double min_window_margin = 0;
  std::string verdict;                 ///< "evidence" or "inconclusive"
};

/// (1/n) log #(C^p u C^s)_n against (1/n) log #L_n for n = 1..N; the verdict looks at
/// n in [window_start, N] and says "evidence" when every margin there is >= threshold.
ConditionIIReport check_condition_II(const Decomposition& d, const LanguageOracle& language,
                                     std::size_t depth, std::size_t window_start = 0,
                                     double threshold = 0.05,
                                     const EnumerationConfig& config = {});

struct ConditionIIIReport {
  std::size_t m = 0;
  std::size_t tau_max = 0;
  std::size_t max_length = 0;
  std::size_t words_checked = 0;
  std::optional<std::size_t> tau;        ///< max over v of the least working bound
  std::optional<Word> hardest;           ///< a v attaining tau
  std::optional<Word> failure;           ///< a v with no extension within tau_max
  std::optional<std::size_t> family_tau; ///< Decomposition::tau_of_m(M), if provided
};

/// For each v in G(M) of length <= n_max, the least tau with u, w of length <= tau and uvw in G.
ConditionIIIReport check_condition_III(const Decomposition& d, const LanguageOracle& language,
                                       std::size_t m, std::size_t tau_max, std::size_t max_length,
                                       const EnumerationConfig& config = {});

enum class Dichotomy { positive_entropy, single_periodic_orbit, inconclusive };

std::string to_string(Dichotomy d);

struct DichotomyReport {
  Dichotomy verdict = Dichotomy::inconclusive;
  std::size_t depth = 0;
  Count count;  ///< #L_N
  /// v, w in G with v L_t w and w L_t v nonempty and disjoint.
  std::optional<std::pair<Word, Word>> witness;
  std::optional<Word> orbit;  ///< primitive word whose rotations make up the language
};

DichotomyReport dichotomy_diagnostic(const LanguageOracle& language, const Decomposition& d,
                                     std::size_t depth, const EnumerationConfig& config = {});

}  // namespace shiftlab
