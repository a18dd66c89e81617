#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shiftlab/word.hpp"

namespace shiftlab {

/// Exact word counts. #L_n outgrows 64 bits quickly (2^64 words at n = 64 on two symbols).
using Count = boost::multiprecision::cpp_int;

/// Natural log of a nonnegative count; -infinity for zero.
double log_count(const Count& c);

/// Deterministic automaton whose accepted-prefix language is the language itself:
/// every state accepts, a missing transition rejects.
struct FollowerAutomaton {
  static constexpr std::int32_t reject = -1;

  int alphabet_size = 2;
  std::int32_t initial = 0;
  /// Row-major table [state * alphabet_size + symbol].
  std::vector<std::int32_t> next;
  /// The table describes the language exactly for words up to this length.
  /// Empty means exact at every length.
  std::optional<std::size_t> valid_depth;

  std::size_t state_count() const noexcept {
    return next.size() / static_cast<std::size_t>(alphabet_size);
  }
  std::int32_t step(std::int32_t state, Symbol s) const noexcept {
    if (state < 0 || s >= alphabet_size) return reject;
    return next[static_cast<std::size_t>(state) * static_cast<std::size_t>(alphabet_size) + s];
  }
  /// End state of the run of w from `from`, or reject.
  std::int32_t run(WordView w, std::int32_t from) const noexcept;
  std::int32_t run(WordView w) const noexcept { return run(w, initial); }
  bool accepts(WordView w) const noexcept { return run(w) != reject; }
  bool exact_at(std::size_t length) const noexcept { return !valid_depth || length <= *valid_depth; }
};

/// Nondeterministic automaton with all states accepting, used as input to determinize().
struct PrefixNfa {
  int alphabet_size = 2;
  /// delta[state][symbol] = successor states
  std::vector<std::vector<std::vector<std::int32_t>>> delta;
  std::vector<std::int32_t> initial;
};

/// Subset construction restricted to reachable nonempty subsets.
/// Throws BudgetExceeded if more than `max_states` subsets appear.
FollowerAutomaton determinize(const PrefixNfa& nfa, std::size_t max_states = 1u << 20);

enum class PeriodicVerdict { admissible, inadmissible, undecided };

/// Membership contract for a one-sided shift's language, plus optional accelerators.
///
/// `contains` must be pure. Languages are expected to be subword-closed and
/// right-extendable; check_language_axioms() spot-checks both.
class LanguageOracle {
public:
  using PeriodicTest = std::function<PeriodicVerdict(WordView primitive)>;

  LanguageOracle(std::string name, Alphabet alphabet, WordPredicate contains,
                 std::string fingerprint);

  LanguageOracle& with_automaton(FollowerAutomaton automaton);
  /// Exact test for "w^infinity is a point of the shift", when the family knows one.
  LanguageOracle& with_periodic_test(PeriodicTest test);

  const std::string& name() const noexcept { return name_; }
  const std::string& fingerprint() const noexcept { return fingerprint_; }
  Alphabet alphabet() const noexcept { return alphabet_; }
  bool contains(WordView w) const { return contains_(w); }
  bool operator()(WordView w) const { return contains_(w); }
  const WordPredicate& predicate() const noexcept { return contains_; }
  const FollowerAutomaton* automaton() const noexcept {
    return automaton_ ? automaton_.get() : nullptr;
  }

  /// Whether w^infinity belongs to the shift. Falls back to checking
  /// w^k in L for the largest k with k|w| <= repeat_check (at least k = 2).
  PeriodicVerdict periodic_point(WordView primitive, std::size_t repeat_check) const;
  bool has_exact_periodic_test() const noexcept { return static_cast<bool>(periodic_); }

private:
  std::string name_;
  Alphabet alphabet_;
  WordPredicate contains_;
  std::string fingerprint_;
  std::shared_ptr<const FollowerAutomaton> automaton_;
  PeriodicTest periodic_;
};

/// Full p-shift: every word is admissible.
LanguageOracle full_shift(int symbols);

struct EnumerationConfig {
  std::size_t max_words = 5'000'000;  ///< per layer
  unsigned threads = 1;
};

/// Layer-by-layer enumeration of L_n. Layer n is built by extending every word
/// of layer n-1 with each symbol and filtering through the oracle, so layers are
/// sorted lexicographically. Layer 0 is {empty word}.
class Enumerator {
public:
  explicit Enumerator(LanguageOracle language, EnumerationConfig config = {});

  const std::vector<Word>& layer(std::size_t n);
  const LanguageOracle& language() const noexcept { return language_; }
  std::size_t deepest() const noexcept { return layers_.size() - 1; }

private:
  LanguageOracle language_;
  EnumerationConfig config_;
  std::vector<std::vector<Word>> layers_;
};

/// L_n by brute force. Throws BudgetExceeded when a layer exceeds config.max_words.
std::vector<Word> enumerate(const LanguageOracle& language, std::size_t n,
                            const EnumerationConfig& config = {});

/// Walks L_1..L_n layer by layer, keeping only the current layer in memory.
void for_each_layer(const LanguageOracle& language, std::size_t n,
                    const std::function<void(std::size_t, const std::vector<Word>&)>& visit,
                    const EnumerationConfig& config = {});

/// #L_n by dynamic programming over the follower automaton, O(n * states * alphabet).
/// Throws std::invalid_argument without an automaton and std::out_of_range when
/// n exceeds the automaton's valid depth.
Count count_dp(const LanguageOracle& language, std::size_t n);

/// #L_1 .. #L_n in one DP sweep.
std::vector<Count> count_dp_series(const LanguageOracle& language, std::size_t n);

/// Counts via DP when an exact automaton is available, otherwise by enumeration.
std::vector<Count> count_series(const LanguageOracle& language, std::size_t n,
                                const EnumerationConfig& config = {});

struct GrowthEstimate {
  std::vector<Count> counts;   ///< counts[i] = #D_{i+1}
  std::vector<double> rates;   ///< (1/n) log #D_n, -infinity where the count is zero
  double limsup_proxy = 0.0;   ///< max rate over the trailing ceil(N/3) entries
  std::vector<std::size_t> zero_lengths;  ///< lengths n with #D_n = 0
};

GrowthEstimate growth_estimate(std::span<const Count> counts);

struct AxiomCheck {
  bool subword_closed = true;
  bool right_extendable = true;
  std::optional<Word> witness;  ///< first offending word
};

/// Checks subword closure and right-extendability on every word of L_1..L_n.
AxiomCheck check_language_axioms(const LanguageOracle& language, std::size_t n,
                                 const EnumerationConfig& config = {});

}  // namespace shiftlab
