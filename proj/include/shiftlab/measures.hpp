#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/decomposition.hpp"
#include "shiftlab/language.hpp"

namespace shiftlab {

/// Periodic points of period <= n, one primitive word per point (rotations are
/// distinct points and are listed separately).
struct PeriodicSet {
  std::size_t n = 0;
  std::vector<Word> points;
  std::vector<Word> undecided;             ///< admissibility not settled; not counted
  std::vector<std::size_t> count_by_period;  ///< [q] = points of least period q, q = 0..n

  std::size_t total() const noexcept { return points.size(); }
  /// #Fix(sigma^q) = sum over d | q of points of least period d.
  std::size_t fixed_points(std::size_t q) const;
};

PeriodicSet periodic_points(const LanguageOracle& language, std::size_t n, std::size_t repeat_check = 64,
                            const EnumerationConfig& config = {});

enum class MeasureKind { word_average, periodic, parry };

std::string to_string(MeasureKind kind);

struct EmpiricalMeasure {
  MeasureKind kind = MeasureKind::word_average;
  std::size_t depth = 0;  ///< m for word averages, n for periodic measures
  std::map<Word, double, ShortLex> cylinder;

  double at(const Word& w) const;
};

/// mu_m([w]) = (1 / (m - |w| + 1)) sum_k #{y in L_m : y[k, k+|w|) = w} / #L_m, with the
/// occurrence counts taken exactly from forward/backward path counts of the automaton.
/// Needs an automaton exact at length m and |w| <= m/2.
EmpiricalMeasure empirical_mme(const LanguageOracle& language, std::size_t m,
                               const std::vector<Word>& targets);

/// Fraction of points of `ps` whose sequence begins with w.
EmpiricalMeasure periodic_measure(const PeriodicSet& ps, const std::vector<Word>& targets);

/// mu[w] = sum_s u_s r_{delta(s, w)} / lambda^{|w|} for left/right eigenvectors u, r of the
/// automaton's adjacency matrix with u . r = 1. Needs a finite, exact automaton.
class ParryMeasure {
public:
  explicit ParryMeasure(const FollowerAutomaton& automaton, double tolerance = 1e-12,
                        std::size_t max_iterations = 1'000'000);

  double lambda() const noexcept { return lambda_; }
  double entropy() const;
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }
  const std::vector<double>& left() const noexcept { return left_; }
  const std::vector<double>& right() const noexcept { return right_; }
  double operator()(WordView w) const;
  EmpiricalMeasure measure(const std::vector<Word>& targets) const;

private:
  FollowerAutomaton automaton_;
  std::vector<double> left_, right_;
  double lambda_ = 0;
  double residual_ = 0;
  std::size_t iterations_ = 0;
};

struct GibbsRow {
  std::size_t n = 0;
  std::size_t core_words = 0;
  std::size_t language_words = 0;
  double min_core_ratio = 0;      ///< min over w in G_n of mu(w) e^{nh}
  double max_language_ratio = 0;  ///< max over w in L_n of mu(w) e^{nh}
  Word argmin;
  Word argmax;
};

struct GibbsReport {
  std::size_t m = 0;
  double entropy = 0;
  std::vector<GibbsRow> rows;
  double lower = 0;  ///< min over rows of min_core_ratio
  double upper = 0;  ///< max over rows of max_language_ratio
  bool lower_trending_to_zero = false;
  bool upper_diverging = false;
};

GibbsReport gibbs_report(const LanguageOracle& language, const Decomposition& d, double entropy,
                         std::size_t n_max, std::size_t m, const EnumerationConfig& config = {});

struct PeriodicEntropy {
  std::vector<std::size_t> per;     ///< #Per(n)
  std::vector<double> per_rates;    ///< (1/n) log #Per(n)
  std::vector<std::size_t> fixed;   ///< #Fix(sigma^n)
  std::vector<double> fixed_rates;  ///< (1/n) log #Fix(sigma^n)
};

/// Rates for n = 1..ps.n from a single periodic set of bound ps.n.
PeriodicEntropy entropy_from_periodic(const PeriodicSet& ps);

}  // namespace shiftlab
