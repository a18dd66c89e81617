#include "shiftlab/coded_system.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

int infer_alphabet(const std::vector<Word>& words, int requested) {
  int top = 1;
  for (const auto& w : words)
    for (Symbol s : w) top = std::max(top, static_cast<int>(s));
  if (requested == 0) return std::max(2, top + 1);
  if (top >= requested)
    throw ConfigError("generator symbol " + std::to_string(top) + " outside alphabet of size " +
                      std::to_string(requested));
  return requested;
}

}  // namespace

GeneratorSet::GeneratorSet(std::vector<Word> generators, int alphabet_size) {
  if (generators.empty()) throw ConfigError("generator set is empty");
  for (const auto& g : generators)
    if (g.empty()) throw ConfigError("generators must be nonempty words");
  std::sort(generators.begin(), generators.end(), ShortLex{});
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  alphabet_size_ = infer_alphabet(generators, alphabet_size);
  words_ = std::move(generators);
}

GeneratorSet GeneratorSet::from_file(const std::filesystem::path& file, int alphabet_size) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read generator file " + file.string());
  std::vector<Word> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.push_back(parse_word(line.substr(first, last - first + 1)));
  }
  return GeneratorSet(std::move(words), alphabet_size);
}

GeneratorSet GeneratorSet::parse(std::string_view list, int alphabet_size) {
  std::vector<Word> words;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto piece = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (piece.empty()) throw ConfigError("empty generator in list '" + std::string(list) + "'");
    words.push_back(parse_word(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return GeneratorSet(std::move(words), alphabet_size);
}

std::size_t GeneratorSet::max_length() const noexcept {
  std::size_t m = 0;
  for (const auto& g : words_) m = std::max(m, g.size());
  return m;
}

ParseTable::ParseTable(const GeneratorSet& generators, WordView w, bool from_boundary)
    : gens_(&generators), word_(w.begin(), w.end()) {
  for (const auto& g : gens_->words()) {
    base_.push_back(ids_);
    ids_ += g.size() - 1;
  }
  columns_.assign(w.size() + 1, std::vector<std::size_t>(ids_, 0));
  if (from_boundary) columns_[0][0] = 1;
  else std::fill(columns_[0].begin(), columns_[0].end(), 1);

  const auto& words = gens_->words();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Symbol a = w[i];
    auto& next = columns_[i + 1];
    for (std::size_t id = 0; id < ids_; ++id) {
      if (!columns_[i][id]) continue;
      auto mark = [&](std::size_t target) {
        if (!next[target]) next[target] = id + 1;
      };
      if (id == 0) {
        for (std::size_t g = 0; g < words.size(); ++g)
          if (words[g][0] == a) mark(words[g].size() == 1 ? 0 : encode(g, 1));
      } else {
        const State s = decode(id);
        const Word& g = words[s.generator];
        if (g[s.offset] == a) mark(s.offset + 1 == g.size() ? 0 : encode(s.generator, s.offset + 1));
      }
    }
  }
}

std::size_t ParseTable::encode(std::size_t generator, std::size_t offset) const {
  return base_[generator] + offset - 1;
}

ParseTable::State ParseTable::decode(std::size_t id) const {
  if (id == 0) return {};
  auto it = std::upper_bound(base_.begin(), base_.end(), id);
  const auto g = static_cast<std::size_t>(std::distance(base_.begin(), it)) - 1;
  return {g, id - base_[g] + 1};
}

bool ParseTable::accepted() const noexcept {
  const auto& last = columns_.back();
  return std::any_of(last.begin(), last.end(), [](std::size_t v) { return v != 0; });
}

bool ParseTable::ends_at_boundary() const noexcept { return columns_.back()[0] != 0; }

std::vector<ParseTable::State> ParseTable::column(std::size_t i) const {
  std::vector<State> out;
  for (std::size_t id = 0; id < ids_; ++id)
    if (columns_.at(i)[id]) out.push_back(decode(id));
  return out;
}

std::optional<ParseTable::Witness> ParseTable::witness(bool end_at_boundary) const {
  const std::size_t n = word_.size();
  std::optional<std::size_t> end;
  if (columns_[n][0]) end = 0;
  else if (!end_at_boundary)
    for (std::size_t id = 1; id < ids_; ++id)
      if (columns_[n][id]) {
        end = id;
        break;
      }
  if (!end) return std::nullopt;

  std::vector<std::size_t> path(n + 1);
  path[n] = *end;
  for (std::size_t i = n; i > 0; --i) path[i - 1] = columns_[i][path[i]] - 1;

  std::vector<std::size_t> cuts;
  for (std::size_t i = 1; i <= n; ++i)
    if (path[i] == 0) cuts.push_back(i);

  Witness out;
  auto slice = [&](std::size_t a, std::size_t b) { return Word(word_.begin() + a, word_.begin() + b); };
  if (cuts.empty()) {
    if (path[0] == 0) out.tail = word_;
    else {
      out.head = word_;
      out.inner = path[n] != 0;
    }
    return out;
  }
  std::size_t pos = 0;
  for (std::size_t c : cuts) {
    Word piece = slice(pos, c);
    if (pos == 0 && path[0] != 0) out.head = std::move(piece);
    else out.middle.push_back(std::move(piece));
    pos = c;
  }
  out.tail = slice(pos, n);
  return out;
}

CodedSystem::CodedSystem(GeneratorSet generators, std::string label)
    : gens_(std::move(generators)), label_(std::move(label)) {}

namespace {

/// Boundary plus inside-generator states as flat ids; shared by contains/in_core/nfa.
struct GeneratorStates {
  explicit GeneratorStates(const GeneratorSet& gens) : words(&gens.words()) {
    for (const auto& g : *words) {
      base.push_back(count);
      count += g.size() - 1;
    }
  }
  template <typename F>
  void successors(std::size_t id, Symbol a, F&& emit) const {
    if (id == 0) {
      for (std::size_t g = 0; g < words->size(); ++g) {
        const Word& w = (*words)[g];
        if (w[0] == a) emit(w.size() == 1 ? 0 : base[g]);
      }
      return;
    }
    auto it = std::upper_bound(base.begin(), base.end(), id);
    const auto g = static_cast<std::size_t>(std::distance(base.begin(), it)) - 1;
    const std::size_t offset = id - base[g] + 1;
    const Word& w = (*words)[g];
    if (w[offset] == a) emit(offset + 1 == w.size() ? 0 : id + 1);
  }

  const std::vector<Word>* words;
  std::vector<std::size_t> base;
  std::size_t count = 1;
};

bool simulate(const GeneratorSet& gens, WordView w, bool from_boundary, bool need_boundary) {
  const GeneratorStates states(gens);
  std::vector<char> cur(states.count, from_boundary ? 0 : 1), next(states.count);
  cur[0] = 1;
  for (Symbol a : w) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (std::size_t id = 0; id < states.count; ++id) {
      if (!cur[id]) continue;
      states.successors(id, a, [&](std::size_t t) {
        next[t] = 1;
        any = true;
      });
    }
    if (!any) return false;
    cur.swap(next);
  }
  return need_boundary ? cur[0] != 0 : true;
}

}  // namespace

bool CodedSystem::contains(WordView w) const { return simulate(gens_, w, false, false); }

bool CodedSystem::in_core(WordView w) const { return simulate(gens_, w, true, true); }

ParseTable CodedSystem::parse_table(WordView w, bool from_boundary) const {
  return ParseTable(gens_, w, from_boundary);
}

PrefixNfa CodedSystem::nfa() const {
  const GeneratorStates states(gens_);
  PrefixNfa nfa;
  nfa.alphabet_size = gens_.alphabet_size();
  nfa.delta.assign(states.count, std::vector<std::vector<std::int32_t>>(
                                     static_cast<std::size_t>(nfa.alphabet_size)));
  for (std::size_t id = 0; id < states.count; ++id) {
    for (int a = 0; a < nfa.alphabet_size; ++a)
      states.successors(id, static_cast<Symbol>(a), [&](std::size_t t) {
        nfa.delta[id][static_cast<std::size_t>(a)].push_back(static_cast<std::int32_t>(t));
      });
    nfa.initial.push_back(static_cast<std::int32_t>(id));
  }
  return nfa;
}

FollowerAutomaton CodedSystem::automaton(std::size_t max_states) const {
  return determinize(nfa(), max_states);
}

LanguageOracle CodedSystem::language() const {
  auto self = std::make_shared<const CodedSystem>(*this);
  LanguageOracle language(name(), Alphabet(gens_.alphabet_size()),
                          [self](WordView w) { return self->contains(w); }, fingerprint());
  language.with_automaton(automaton());
  return language;
}

std::size_t CodedSystem::cn(std::size_t n) const {
  std::set<Word> seen;
  for (const auto& g : gens_.words()) {
    if (g.size() < n) continue;
    seen.insert(prefix(g, n));
    seen.insert(suffix(g, n));
  }
  return seen.size();
}

Decomposition CodedSystem::decomposition() const {
  auto self = std::make_shared<const CodedSystem>(*this);
  Decomposition d;
  d.name = name();
  d.core = [self](WordView w) { return self->in_core(w); };
  d.prefixes = [self](WordView w) {
    if (w.empty()) return true;
    for (const auto& g : self->gens_.words())
      if (g.size() >= w.size() && std::equal(w.begin(), w.end(), g.end() - static_cast<std::ptrdiff_t>(w.size())))
        return true;
    return false;
  };
  d.suffixes = [self](WordView w) {
    if (w.empty()) return true;
    for (const auto& g : self->gens_.words())
      if (g.size() >= w.size() && std::equal(w.begin(), w.end(), g.begin())) return true;
    return false;
  };
  d.gap = 0;
  d.periodic_spec = true;
  d.tau_of_m = [self](std::size_t m) -> std::optional<std::size_t> { return self->tau(m).tau(); };
  return d;
}

TauTable CodedSystem::tau(std::size_t m) const {
  TauTable t;
  t.m = m;
  // shortest generator per suffix / prefix of length 1..M
  std::map<Word, std::size_t> ending, starting;
  for (const auto& g : gens_.words()) {
    for (std::size_t len = 1; len <= std::min(m, g.size()); ++len) {
      auto s = suffix(g, len);
      auto p = prefix(g, len);
      auto [it1, in1] = ending.emplace(std::move(s), g.size());
      if (!in1) it1->second = std::min(it1->second, g.size());
      auto [it2, in2] = starting.emplace(std::move(p), g.size());
      if (!in2) it2->second = std::min(it2->second, g.size());
    }
  }
  for (const auto& [u, len] : ending) t.tau_prefix = std::max(t.tau_prefix, len);
  for (const auto& [u, len] : starting) t.tau_suffix = std::max(t.tau_suffix, len);
  return t;
}

TheoremBReport CodedSystem::theorem_b_report(std::size_t depth, const EnumerationConfig& config) const {
  TheoremBReport r;
  r.depth = depth;
  r.truncation = gens_.truncation();
  r.lower_bound = gens_.truncation() > 0;
  r.language_counts = count_series(language(), depth, config);
  for (std::size_t n = 1; n <= depth; ++n) {
    r.cn.push_back(cn(n));
    const double dn = static_cast<double>(n);
    r.cn_rates.push_back(r.cn.back() ? std::log(static_cast<double>(r.cn.back())) / dn
                                     : -std::numeric_limits<double>::infinity());
    r.language_rates.push_back(log_count(r.language_counts[n - 1]) / dn);
  }
  const std::size_t window = (depth + 2) / 3;
  bool polynomial = true;
  r.margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = depth - window + 1; n <= depth; ++n) {
    const double c_rate = std::max(0.0, r.cn_rates[n - 1]);
    if (r.cn_rates[n - 1] > 2 * std::log(static_cast<double>(n) + 1) / static_cast<double>(n)) polynomial = false;
    r.margin = std::min(r.margin, r.language_rates[n - 1] - c_rate);
  }
  if (depth == 0) r.margin = 0;
  if (depth > 0 && polynomial) r.verdict = "evidence-for-case-2";
  else if (depth > 0 && r.margin >= 0.05) r.verdict = "evidence-for-case-1";
  else r.verdict = "inconclusive";
  return r;
}

std::string CodedSystem::name() const {
  if (!label_.empty()) return label_;
  return "coded(" + std::to_string(gens_.words().size()) + " generators)";
}

std::string CodedSystem::fingerprint() const {
  std::string f = "coded|" + std::to_string(gens_.alphabet_size()) + "|";
  for (const auto& g : gens_.words()) f += format_word(g) + ",";
  return f;
}

LanguageOracle periodic_orbit_language(WordView w, int alphabet_size) {
  if (w.empty()) throw ConfigError("orbit word must be nonempty");
  // reduce to the primitive root
  std::size_t q = w.size();
  for (std::size_t d = 1; d < w.size(); ++d) {
    if (w.size() % d) continue;
    bool root = true;
    for (std::size_t i = d; i < w.size() && root; ++i) root = w[i] == w[i - d];
    if (root) {
      q = d;
      break;
    }
  }
  const Word base(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(q));
  int top = 1;
  for (Symbol s : base) top = std::max(top, static_cast<int>(s));
  const int p = alphabet_size ? alphabet_size : std::max(2, top + 1);
  PrefixNfa nfa;
  nfa.alphabet_size = p;
  nfa.delta.assign(q, std::vector<std::vector<std::int32_t>>(static_cast<std::size_t>(p)));
  for (std::size_t i = 0; i < q; ++i) {
    nfa.delta[i][base[i]].push_back(static_cast<std::int32_t>((i + 1) % q));
    nfa.initial.push_back(static_cast<std::int32_t>(i));
  }
  auto dfa = std::make_shared<const FollowerAutomaton>(determinize(nfa));
  LanguageOracle language("orbit(" + format_word(base) + ")", Alphabet(p),
                          [dfa](WordView v) { return dfa->accepts(v); },
                          "orbit|" + format_word(base));
  language.with_automaton(*dfa);
  return language;
}

}  // namespace shiftlab
