#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;
using WordPredicate = std::function<bool(WordView)>;

/// Symbols 0..size-1. At least two symbols, at most 255.
class Alphabet {
public:
  explicit Alphabet(int size);

  int size() const noexcept { return size_; }
  bool admits(Symbol s) const noexcept { return s < size_; }
  bool admits(WordView w) const noexcept;

  friend bool operator==(Alphabet, Alphabet) = default;

private:
  int size_;
};

/// Outcome of comparing two words over their shared length.
///
/// `prefix_of` means the left word is a proper prefix of the right one,
/// `extends` the reverse. Both count as "equal under truncation".
enum class LexOrder { less, equal, greater, prefix_of, extends };

LexOrder lex_compare(WordView u, WordView v) noexcept;

/// Same as above, but rejects words with symbols outside `alphabet`.
LexOrder lex_compare(WordView u, WordView v, Alphabet alphabet);

/// u ⪯ v after truncating both to the shorter length.
bool lex_leq(WordView u, WordView v) noexcept;

/// First k symbols. Throws std::out_of_range when k > |w|.
Word prefix(WordView w, std::size_t k);
/// Last k symbols. Throws std::out_of_range when k > |w|.
Word suffix(WordView w, std::size_t k);

Word concat(WordView u, WordView v);
Word repeat(WordView w, std::size_t times);

/// Words of A·B that the filter admits. Output is sorted and deduplicated.
std::vector<Word> concat_set(const std::vector<Word>& left, const std::vector<Word>& right,
                             const WordPredicate& filter);

/// True when w is not a proper power u^k, k >= 2. The empty word is not primitive.
bool is_primitive(WordView w) noexcept;

/// Cyclic rotation starting at position k.
Word rotate(WordView w, std::size_t k);

/// Words order by length first, then lexicographically.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Digit string ("10110"), or '.'-separated when any symbol is >= 10
/// ("1.0.11"; a single large symbol is written with a trailing dot, "12.").
std::string format_word(WordView w);

/// Inverse of format_word. Throws ConfigError on malformed input.
Word parse_word(std::string_view text);

}  // namespace shiftlab
