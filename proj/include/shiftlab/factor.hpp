#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "shiftlab/decomposition.hpp"
#include "shiftlab/language.hpp"

namespace shiftlab {

/// Sliding block code with window radius k: (pi x)_n = phi(x_{n-k} .. x_{n+k}).
struct BlockCode {
  std::size_t k = 0;
  int target_alphabet = 2;
  std::map<Word, Symbol> table;  ///< (2k+1)-words to target symbols

  std::size_t window() const noexcept { return 2 * k + 1; }

  /// {"k": 1, "target_alphabet": 2, "table": {"000": 0, "001": 1, ...}}
  static BlockCode from_json(const nlohmann::json& j);
  static BlockCode from_file(const std::filesystem::path& file);
  nlohmann::json to_json() const;

  /// Throws ConfigError unless the table covers every word of L_{2k+1} with symbols
  /// below target_alphabet.
  void validate(const LanguageOracle& source, const EnumerationConfig& config = {}) const;
};

/// Phi on finite words; the result is 2k symbols shorter.
/// Throws std::invalid_argument for |w| < 2k (|w| = 2k maps to the empty word) and
/// std::out_of_range on a table miss.
Word apply_code(const BlockCode& code, WordView w);

struct HomomorphismCheck {
  bool split_both = false;    ///< Phi(vw) = Phi(v) Phi(s(v) p(w)) Phi(w)
  bool split_right = false;   ///< Phi(vw) = Phi(v) Phi(s(v) w)
  bool split_left = false;    ///< Phi(vw) = Phi(v p(w)) Phi(w)
  bool holds() const noexcept { return split_both && split_right && split_left; }
};

/// s = last 2k symbols of v, p = first 2k symbols of w. Needs |v|, |w| >= 2k
/// (and >= 2k+1 for the Phi(v), Phi(w) terms when k > 0).
HomomorphismCheck homomorphism_check(const BlockCode& code, WordView v, WordView w);

/// The factor X~ = pi(X): w~ is admissible iff w~ = Phi(w) for some w in L_{|w~|+2k}.
class FactorSystem {
public:
  FactorSystem(LanguageOracle source, BlockCode code);

  const LanguageOracle& source() const noexcept { return source_; }
  const BlockCode& code() const noexcept { return code_; }

  /// Some preimage of `image` of length |image| + 2k satisfying `accept`, found by
  /// depth-first search through the source language.
  std::optional<Word> preimage(WordView image, const WordPredicate& accept = {}) const;
  bool contains(WordView image) const;

  /// Product of the source automaton with the last 2k source symbols, determinized.
  /// Exact wherever the source automaton is, minus 2k.
  std::optional<FollowerAutomaton> automaton(std::size_t max_states = 1u << 18) const;
  LanguageOracle language() const;

  /// Phi(G), Phi(C^p . P_2k), Phi(S_2k . C^s) with P_2k, S_2k the 2k-prefixes and
  /// 2k-suffixes of G-words up to length `core_depth`; gap t + 2k.
  /// Throws ConfigError when G has no word of length >= 2k within that depth.
  Decomposition transport(const Decomposition& d, std::size_t core_depth = 12,
                          const EnumerationConfig& config = {}) const;

  std::string name() const;

private:
  LanguageOracle source_;
  BlockCode code_;
};

struct FactorEntropyReport {
  std::size_t depth = 0;
  std::vector<Count> factor_counts;
  std::vector<Count> boundary_counts;  ///< #(C~^p u C~^s)_n
  std::vector<double> factor_rates;
  std::vector<double> boundary_rates;
  double margin = 0;  ///< trailing-window min of factor rate minus boundary rate (zero count as 0)
  std::string verdict;  ///< evidence or inconclusive
};

FactorEntropyReport factor_entropy_gap(const FactorSystem& factor, const Decomposition& transported,
                                       std::size_t depth, double threshold = 0.05,
                                       const EnumerationConfig& config = {});

}  // namespace shiftlab
