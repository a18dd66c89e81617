#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/decomposition.hpp"
#include "shiftlab/language.hpp"

namespace shiftlab {

/// Finite generator list: nonempty words, deduplicated, kept in shortlex order.
class GeneratorSet {
public:
  /// Alphabet size defaults to max symbol + 1 (at least 2).
  explicit GeneratorSet(std::vector<Word> generators, int alphabet_size = 0);
  /// One word per line; blank lines and '#' comments skipped.
  static GeneratorSet from_file(const std::filesystem::path& file, int alphabet_size = 0);
  /// Comma-separated words, "0,100".
  static GeneratorSet parse(std::string_view list, int alphabet_size = 0);

  const std::vector<Word>& words() const noexcept { return words_; }
  int alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t max_length() const noexcept;
  /// Truncation depth recorded in reports; 0 when the list is the whole generator set.
  std::size_t truncation() const noexcept { return truncation_; }
  GeneratorSet& with_truncation(std::size_t depth) {
    truncation_ = depth;
    return *this;
  }

private:
  std::vector<Word> words_;
  int alphabet_size_ = 2;
  std::size_t truncation_ = 0;
};

/// Reachable parse configurations per position: boundary (state 0) or inside
/// generator g after `offset` symbols.
class ParseTable {
public:
  struct State {
    std::size_t generator = 0;
    std::size_t offset = 0;  ///< 0 means at a generator boundary
  };

  /// `from_boundary`: parses must start at a generator boundary (G membership);
  /// otherwise any configuration may start.
  ParseTable(const GeneratorSet& generators, WordView w, bool from_boundary);

  bool accepted() const noexcept;          ///< some configuration survives to the end
  bool ends_at_boundary() const noexcept;  ///< boundary configuration survives
  std::size_t width() const noexcept { return columns_.size(); }
  /// Configurations alive after reading i symbols.
  std::vector<State> column(std::size_t i) const;

  struct Witness {
    Word head;                 ///< suffix of a generator (possibly a whole one, or empty)
    std::vector<Word> middle;  ///< whole generators
    Word tail;                 ///< prefix of a generator
    bool inner = false;        ///< w sits strictly inside one generator
  };
  /// A parse of w recovered by walking predecessor links back from the end.
  std::optional<Witness> witness(bool end_at_boundary = false) const;

private:
  std::size_t encode(std::size_t generator, std::size_t offset) const;
  State decode(std::size_t id) const;

  const GeneratorSet* gens_;
  Word word_;
  std::vector<std::size_t> base_;  ///< first id per generator
  std::size_t ids_ = 1;
  /// columns_[i][id] = predecessor id + 1 in column i-1, or 0 if unreachable;
  /// column 0 marks start configurations with 1.
  std::vector<std::vector<std::size_t>> columns_;
};

struct TauTable {
  std::size_t m = 0;
  std::size_t tau_prefix = 0;  ///< max over u in C^p, |u| <= M, of the shortest generator ending in u
  std::size_t tau_suffix = 0;  ///< max over u in C^s, |u| <= M, of the shortest generator starting with u
  std::size_t tau() const noexcept { return tau_prefix + tau_suffix; }
};

struct TheoremBReport {
  std::size_t depth = 0;
  std::size_t truncation = 0;
  bool lower_bound = false;  ///< c_n from a truncated generator list
  std::vector<std::size_t> cn;
  std::vector<Count> language_counts;
  std::vector<double> cn_rates;
  std::vector<double> language_rates;
  double margin = 0;  ///< trailing-window language rate minus c_n rate
  std::string verdict;  ///< evidence-for-case-1, evidence-for-case-2, inconclusive
};

class CodedSystem {
public:
  explicit CodedSystem(GeneratorSet generators, std::string label = {});

  const GeneratorSet& generators() const noexcept { return gens_; }

  /// w = s g_1 ... g_m p with s a generator suffix, p a generator prefix.
  bool contains(WordView w) const;
  /// Exact concatenation of generators.
  bool in_core(WordView w) const;
  ParseTable parse_table(WordView w, bool from_boundary = false) const;

  /// Subset construction over the generator automaton; exact at every length.
  FollowerAutomaton automaton(std::size_t max_states = 1u << 20) const;
  LanguageOracle language() const;

  /// #({length-n prefixes} u {length-n suffixes}) over the generators.
  std::size_t cn(std::size_t n) const;

  /// G = concatenations, C^p = generator suffixes, C^s = generator prefixes, t = 0.
  Decomposition decomposition() const;
  TauTable tau(std::size_t m) const;

  TheoremBReport theorem_b_report(std::size_t depth, const EnumerationConfig& config = {}) const;

  std::string name() const;
  std::string fingerprint() const;

private:
  PrefixNfa nfa() const;

  GeneratorSet gens_;
  std::string label_;
};

/// Language of the single periodic orbit w^infinity (all subwords of w^k).
LanguageOracle periodic_orbit_language(WordView w, int alphabet_size = 0);

}  // namespace shiftlab
