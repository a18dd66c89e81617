#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/algebraic.hpp"
#include "shiftlab/decomposition.hpp"
#include "shiftlab/language.hpp"

namespace shiftlab {

/// The one-sided beta-shift: x is admissible iff every shift of x is <= w(beta).
class BetaShift {
public:
  /// Computes the first `digits` symbols of w(beta).
  static BetaShift from_spec(const BetaSpec& spec, std::size_t digits, unsigned precision_bits = 0);
  static BetaShift parse(std::string_view spec, std::size_t digits);

  /// Same beta, new digit count.
  BetaShift with_digits(std::size_t digits) const;

  const BetaSpec& spec() const noexcept { return spec_; }
  double beta() const noexcept { return expansion_.beta; }
  int symbols() const noexcept { return expansion_.symbols; }
  double entropy() const;
  const std::vector<Symbol>& digits() const noexcept { return expansion_.digits; }
  const QuasiGreedyExpansion& expansion() const noexcept { return expansion_; }
  std::optional<std::pair<std::size_t, std::size_t>> periodic_tail() const noexcept {
    return expansion_.periodic_tail;
  }

  /// w_i(beta), 1-based. Past the cached digits this needs a known periodic tail.
  Symbol digit(std::size_t i) const;
  /// Number of digits available: the cache, or unbounded when the tail is known.
  bool digit_available(std::size_t i) const noexcept;

  /// Direct rule: every suffix of w is <= the prefix of w(beta) of the same length.
  /// Throws DigitCacheTooShort when |w| exceeds the available digits.
  bool contains(WordView w) const;

  /// Gamma_beta unfolded to states v_1..v_{D+1}; exact for words of length <= D.
  FollowerAutomaton automaton(std::size_t depth) const;
  /// Gamma_beta folded along the periodic tail; exact at every length. Needs the tail.
  std::optional<FollowerAutomaton> folded_automaton() const;

  /// Oracle using the folded automaton when available, else the unfolded one at
  /// the cached digit depth.
  LanguageOracle language() const;

  /// G: runs from v_1 ending at v_1. C^s: prefixes of w(beta). C^p: {empty}.
  Decomposition decomposition() const;

  /// First-return loops at v_1: w_1..w_{i-1} j for i <= max_len and j < w_i.
  std::vector<Word> generators(std::size_t max_len) const;

  /// Whether w^infinity lies in the shift, comparing each rotation's periodic
  /// word to w(beta). Equality is certified only when the tail is known.
  PeriodicVerdict periodic_point(WordView primitive) const;

  std::string name() const;
  std::string fingerprint() const;

private:
  BetaShift(BetaSpec spec, QuasiGreedyExpansion expansion, unsigned precision_bits);

  std::shared_ptr<const FollowerAutomaton> shared_automaton() const;

  BetaSpec spec_;
  QuasiGreedyExpansion expansion_;
  unsigned requested_precision_ = 0;
};

}  // namespace shiftlab
