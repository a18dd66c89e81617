#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/decomposition.hpp"
#include "shiftlab/language.hpp"

namespace shiftlab {

/// The gap set S: a finite list, or an infinite rule with a cap used wherever
/// a finite structure is needed (automaton depth, generator lists).
class GapSet {
public:
  static GapSet finite(std::vector<std::size_t> elements);
  /// "pow2" = {1, 2, 4, 8, ...}, "all" = {0, 1, 2, ...}.
  static GapSet rule(const std::string& name, std::size_t cap);
  static GapSet rule(std::string name, std::function<bool(std::size_t)> member, std::size_t cap);

  bool contains(std::size_t n) const;
  bool is_finite() const noexcept { return !member_; }
  /// max S for finite sets, the cap for rules.
  std::size_t bound() const noexcept { return bound_; }
  /// Elements <= limit, ascending.
  std::vector<std::size_t> elements(std::size_t limit) const;
  std::string str() const;

private:
  std::vector<std::size_t> finite_;
  std::function<bool(std::size_t)> member_;
  std::string rule_name_;
  std::size_t bound_ = 0;
};

/// How zero runs touching the ends of a word are treated.
enum class GapBoundary {
  /// Boundary runs and all-zero words must fit inside some gap: length <= max S
  /// when S is finite. This is the language of the two-sided shift.
  two_sided,
  /// Boundary runs unconstrained, all-zero words always admissible.
  display,
};

struct SGapEntropy {
  double lambda = 1;
  double log_lambda = 0;
  double residual = 0;   ///< 1 - sum_{n in S} lambda^{-n-1}
  std::size_t terms = 0; ///< elements of S summed at the final iterate
  bool truncated = false;
};

class SGapShift {
public:
  explicit SGapShift(GapSet gaps, GapBoundary boundary = GapBoundary::two_sided);

  const GapSet& gaps() const noexcept { return gaps_; }
  GapBoundary boundary() const noexcept { return boundary_; }

  bool contains(WordView w) const;
  /// States: leading run, R_r (r zeros since the last 1), trailing sink in display mode.
  /// Rules are unfolded to the cap; exact up to length cap + 1.
  FollowerAutomaton automaton() const;
  LanguageOracle language() const;

  /// Bisection for 1 = sum_{n in S} x^{-n-1} on [1, 2]. Infinite rules are summed
  /// until the tail bound x^{-n-1} / (x - 1) drops below tol.
  SGapEntropy entropy(double tol = 1e-13) const;

  /// G = 0^{n_1} 1 ... 0^{n_k} 1 with n_i in S, C^p = {0^n 1 : n not in S}, C^s = {0^n}.
  Decomposition decomposition() const;
  /// {0^s 1 : s in S, s + 1 <= max_len}
  std::vector<Word> generators(std::size_t max_len) const;
  PeriodicVerdict periodic_point(WordView primitive) const;

  std::string name() const;
  std::string fingerprint() const;

private:
  bool bounded_runs() const noexcept;

  GapSet gaps_;
  GapBoundary boundary_;
};

struct MinGap {
  std::size_t t = 0;
  Word connector;
};

/// Least t with some v in L_t making uvw admissible, searching t = 0..t_max.
std::optional<MinGap> min_gap(const LanguageOracle& language, WordView u, WordView w,
                              std::size_t t_max, const EnumerationConfig& config = {});

}  // namespace shiftlab
