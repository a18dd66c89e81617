#include "shiftlab/word.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "shiftlab/errors.hpp"

namespace shiftlab {

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 2 || size > 255)
    throw ConfigError("alphabet size must lie in [2, 255], got " + std::to_string(size));
}

bool Alphabet::admits(WordView w) const noexcept {
  return std::all_of(w.begin(), w.end(), [this](Symbol s) { return admits(s); });
}

LexOrder lex_compare(WordView u, WordView v) noexcept {
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] < v[i]) return LexOrder::less;
    if (u[i] > v[i]) return LexOrder::greater;
  }
  if (u.size() == v.size()) return LexOrder::equal;
  return u.size() < v.size() ? LexOrder::prefix_of : LexOrder::extends;
}

LexOrder lex_compare(WordView u, WordView v, Alphabet alphabet) {
  if (!alphabet.admits(u) || !alphabet.admits(v))
    throw std::invalid_argument("lex_compare: word uses a symbol outside the alphabet");
  return lex_compare(u, v);
}

bool lex_leq(WordView u, WordView v) noexcept { return lex_compare(u, v) != LexOrder::greater; }

Word prefix(WordView w, std::size_t k) {
  if (k > w.size()) throw std::out_of_range("prefix: k exceeds word length");
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
}

Word suffix(WordView w, std::size_t k) {
  if (k > w.size()) throw std::out_of_range("suffix: k exceeds word length");
  return Word(w.end() - static_cast<std::ptrdiff_t>(k), w.end());
}

Word concat(WordView u, WordView v) {
  Word out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word repeat(WordView w, std::size_t times) {
  Word out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

std::vector<Word> concat_set(const std::vector<Word>& left, const std::vector<Word>& right,
                             const WordPredicate& filter) {
  std::vector<Word> out;
  for (const auto& a : left)
    for (const auto& b : right) {
      Word ab = concat(a, b);
      if (filter(ab)) out.push_back(std::move(ab));
    }
  std::sort(out.begin(), out.end(), ShortLex{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_primitive(WordView w) noexcept {
  const std::size_t n = w.size();
  if (n == 0) return false;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return false;
  }
  return true;
}

Word rotate(WordView w, std::size_t k) {
  Word out;
  out.reserve(w.size());
  if (w.empty()) return out;
  k %= w.size();
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a
  std::size_t h = 1469598103934665603ULL;
  for (Symbol s : w) {
    h ^= s;
    h *= 1099511628211ULL;
  }
  return h ^ w.size();
}

std::string format_word(WordView w) {
  const bool dotted = std::any_of(w.begin(), w.end(), [](Symbol s) { return s >= 10; });
  std::string out;
  if (!dotted) {
    for (Symbol s : w) out.push_back(static_cast<char>('0' + s));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(w[i]);
  }
  if (w.size() == 1) out.push_back('.');
  return out;
}

Word parse_word(std::string_view text) {
  Word out;
  if (text.find('.') == std::string_view::npos) {
    for (char c : text) {
      if (c < '0' || c > '9') throw ConfigError("invalid symbol in word: '" + std::string(text) + "'");
      out.push_back(static_cast<Symbol>(c - '0'));
    }
    return out;
  }
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    const std::string_view token = text.substr(start, dot - start);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || value > 254)
      throw ConfigError("invalid dotted word: '" + std::string(text) + "'");
    out.push_back(static_cast<Symbol>(value));
    start = dot + 1;
  }
  return out;
}

}  // namespace shiftlab
