#include "shiftlab/factor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "shiftlab/errors.hpp"

namespace shiftlab {

BlockCode BlockCode::from_json(const nlohmann::json& j) {
  BlockCode code;
  try {
    code.k = j.at("k").get<std::size_t>();
    code.target_alphabet = j.value("target_alphabet", 2);
    if (code.target_alphabet < 2 || code.target_alphabet > 255)
      throw ConfigError("block code: target_alphabet must lie in [2, 255]");
    for (const auto& [key, value] : j.at("table").items()) {
      Word window = parse_word(key);
      if (window.size() != code.window())
        throw ConfigError("block code: window '" + key + "' has length " + std::to_string(window.size()) +
                          ", expected " + std::to_string(code.window()));
      const int symbol = value.get<int>();
      if (symbol < 0 || symbol >= code.target_alphabet)
        throw ConfigError("block code: symbol " + std::to_string(symbol) + " for '" + key +
                          "' outside the target alphabet");
      code.table[std::move(window)] = static_cast<Symbol>(symbol);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("block code: ") + e.what());
  }
  return code;
}

BlockCode BlockCode::from_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read block code file " + file.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
}

nlohmann::json BlockCode::to_json() const {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [w, s] : table) entries[format_word(w)] = s;
  return {{"k", k}, {"target_alphabet", target_alphabet}, {"table", entries}};
}

void BlockCode::validate(const LanguageOracle& source, const EnumerationConfig& config) const {
  for (const Word& w : enumerate(source, window(), config))
    if (!table.count(w))
      throw ConfigError("block code: no entry for admissible window " + format_word(w));
}

Word apply_code(const BlockCode& code, WordView w) {
  const std::size_t span = 2 * code.k;
  if (w.size() < span)
    throw std::invalid_argument("apply_code: word of length " + std::to_string(w.size()) +
                                " shorter than 2k = " + std::to_string(span));
  Word out;
  out.reserve(w.size() - span);
  Word window;
  for (std::size_t i = 0; i + span < w.size(); ++i) {
    window.assign(w.begin() + static_cast<std::ptrdiff_t>(i),
                  w.begin() + static_cast<std::ptrdiff_t>(i + span + 1));
    auto it = code.table.find(window);
    if (it == code.table.end()) throw std::out_of_range("apply_code: no entry for window " + format_word(window));
    out.push_back(it->second);
  }
  return out;
}

HomomorphismCheck homomorphism_check(const BlockCode& code, WordView v, WordView w) {
  const std::size_t span = 2 * code.k;
  if (v.size() < span || w.size() < span)
    throw std::invalid_argument("homomorphism_check: |v| and |w| must be at least 2k");
  const Word vw = concat(v, w);
  const Word whole = apply_code(code, vw);
  const Word sv = suffix(v, span);
  const Word pw = prefix(w, span);
  const Word phi_v = apply_code(code, v);
  const Word phi_w = apply_code(code, w);

  HomomorphismCheck h;
  h.split_both = whole == concat(concat(phi_v, apply_code(code, concat(sv, pw))), phi_w);
  h.split_right = whole == concat(phi_v, apply_code(code, concat(sv, w)));
  h.split_left = whole == concat(apply_code(code, concat(v, pw)), phi_w);
  return h;
}

FactorSystem::FactorSystem(LanguageOracle source, BlockCode code)
    : source_(std::move(source)), code_(std::move(code)) {}

std::optional<Word> FactorSystem::preimage(WordView image, const WordPredicate& accept) const {
  const std::size_t span = 2 * code_.k;
  const std::size_t target = image.size() + span;
  const int p = source_.alphabet().size();
  const FollowerAutomaton* a = source_.automaton();
  const bool use_automaton = a && a->exact_at(target);

  Word w;
  w.reserve(target);
  std::optional<Word> found;
  std::function<void(std::int32_t)> dfs = [&](std::int32_t state) {
    if (w.size() == target) {
      if (!accept || accept(w)) found = w;
      return;
    }
    for (int s = 0; s < p && !found; ++s) {
      const auto sym = static_cast<Symbol>(s);
      std::int32_t next = 0;
      w.push_back(sym);
      bool ok;
      if (use_automaton) {
        next = a->step(state, sym);
        ok = next != FollowerAutomaton::reject;
      } else {
        ok = source_.contains(w);
      }
      if (ok && w.size() > span) {
        const std::size_t i = w.size() - span - 1;
        auto it = code_.table.find(Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.end()));
        ok = it != code_.table.end() && it->second == image[i];
      }
      if (ok) dfs(next);
      w.pop_back();
    }
  };
  dfs(use_automaton ? a->initial : 0);
  return found;
}

bool FactorSystem::contains(WordView image) const {
  for (Symbol s : image)
    if (s >= code_.target_alphabet) return false;
  return preimage(image).has_value();
}

std::optional<FollowerAutomaton> FactorSystem::automaton(std::size_t max_states) const {
  const FollowerAutomaton* a = source_.automaton();
  if (!a) return std::nullopt;
  const std::size_t span = 2 * code_.k;
  if (a->valid_depth && *a->valid_depth < span) return std::nullopt;

  // NFA states: (source state, last 2k source symbols)
  std::map<std::pair<std::int32_t, Word>, std::int32_t> index;
  std::vector<std::pair<std::int32_t, Word>> states;
  auto intern = [&](std::int32_t s, Word buf) {
    auto [it, inserted] = index.emplace(std::make_pair(s, buf), static_cast<std::int32_t>(states.size()));
    if (inserted) {
      if (states.size() >= max_states) throw BudgetExceeded("factor automaton: too many product states");
      states.emplace_back(s, std::move(buf));
    }
    return it->second;
  };

  PrefixNfa nfa;
  nfa.alphabet_size = code_.target_alphabet;
  const int p = a->alphabet_size;
  Word buf;
  std::function<void(std::int32_t)> seed = [&](std::int32_t s) {
    if (buf.size() == span) {
      nfa.initial.push_back(intern(s, buf));
      return;
    }
    for (int c = 0; c < p; ++c) {
      const auto t = a->step(s, static_cast<Symbol>(c));
      if (t == FollowerAutomaton::reject) continue;
      buf.push_back(static_cast<Symbol>(c));
      seed(t);
      buf.pop_back();
    }
  };
  seed(a->initial);
  if (nfa.initial.empty()) return std::nullopt;

  for (std::size_t id = 0; id < states.size(); ++id) {
    nfa.delta.resize(states.size(), std::vector<std::vector<std::int32_t>>(
                                        static_cast<std::size_t>(nfa.alphabet_size)));
    const auto [s, window_prefix] = states[id];
    for (int c = 0; c < p; ++c) {
      const auto t = a->step(s, static_cast<Symbol>(c));
      if (t == FollowerAutomaton::reject) continue;
      Word window = window_prefix;
      window.push_back(static_cast<Symbol>(c));
      auto it = code_.table.find(window);
      if (it == code_.table.end()) continue;
      const Word next_buf(window.begin() + 1, window.end());
      const auto target = intern(t, next_buf);
      nfa.delta.resize(states.size(), std::vector<std::vector<std::int32_t>>(
                                          static_cast<std::size_t>(nfa.alphabet_size)));
      nfa.delta[id][it->second].push_back(target);
    }
  }
  nfa.delta.resize(states.size(), std::vector<std::vector<std::int32_t>>(
                                      static_cast<std::size_t>(nfa.alphabet_size)));
  FollowerAutomaton dfa = determinize(nfa, max_states);
  if (a->valid_depth) dfa.valid_depth = *a->valid_depth - span;
  return dfa;
}

LanguageOracle FactorSystem::language() const {
  auto self = std::make_shared<const FactorSystem>(*this);
  auto dfa = automaton();
  std::shared_ptr<const FollowerAutomaton> shared =
      dfa ? std::make_shared<const FollowerAutomaton>(*dfa) : nullptr;
  LanguageOracle language(
      name(), Alphabet(code_.target_alphabet),
      [self, shared](WordView w) {
        if (shared && shared->exact_at(w.size())) return shared->accepts(w);
        return self->contains(w);
      },
      "factor|" + source_.fingerprint() + "|" + code_.to_json().dump());
  if (dfa) language.with_automaton(std::move(*dfa));
  return language;
}

Decomposition FactorSystem::transport(const Decomposition& d, std::size_t core_depth,
                                      const EnumerationConfig& config) const {
  const std::size_t span = 2 * code_.k;
  auto heads = std::make_shared<std::set<Word>>();
  auto tails = std::make_shared<std::set<Word>>();
  Enumerator e(source_, config);
  for (std::size_t len = span; len <= core_depth; ++len)
    for (const Word& g : e.layer(len))
      if (d.core(g)) {
        heads->insert(prefix(g, span));
        tails->insert(suffix(g, span));
      }
  if (heads->empty())
    throw ConfigError("transport: G has no word of length >= 2k = " + std::to_string(span) +
                      " up to length " + std::to_string(core_depth));

  auto self = std::make_shared<const FactorSystem>(*this);
  Decomposition out;
  out.name = "factor(" + d.name + ")";
  auto core = d.core;
  auto pre = d.prefixes;
  auto suf = d.suffixes;
  out.core = [self, core](WordView w) { return self->preimage(w, core).has_value(); };
  out.prefixes = [self, pre, heads, span](WordView w) {
    return self
        ->preimage(w,
                   [&](WordView x) {
                     const std::size_t cut = x.size() - span;
                     return pre(x.first(cut)) && heads->count(Word(x.begin() + static_cast<std::ptrdiff_t>(cut), x.end()));
                   })
        .has_value();
  };
  out.suffixes = [self, suf, tails, span](WordView w) {
    return self
        ->preimage(w,
                   [&](WordView x) {
                     return tails->count(Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(span))) &&
                            suf(x.subspan(span));
                   })
        .has_value();
  };
  out.gap = d.gap + span;
  out.periodic_spec = d.periodic_spec;
  return out;
}

std::string FactorSystem::name() const { return "factor(" + source_.name() + ",k=" + std::to_string(code_.k) + ")"; }

FactorEntropyReport factor_entropy_gap(const FactorSystem& factor, const Decomposition& transported,
                                       std::size_t depth, double threshold, const EnumerationConfig& config) {
  FactorEntropyReport r;
  r.depth = depth;
  for_each_layer(factor.language(), depth, [&](std::size_t n, const std::vector<Word>& layer) {
    std::size_t boundary = 0;
    for (const Word& w : layer)
      if (transported.prefixes(w) || transported.suffixes(w)) ++boundary;
    const double dn = static_cast<double>(n);
    r.factor_counts.emplace_back(layer.size());
    r.boundary_counts.emplace_back(boundary);
    r.factor_rates.push_back(log_count(r.factor_counts.back()) / dn);
    r.boundary_rates.push_back(log_count(r.boundary_counts.back()) / dn);
  }, config);
  const std::size_t window = (depth + 2) / 3;
  r.margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = depth - window + 1; n <= depth; ++n)
    r.margin = std::min(r.margin, r.factor_rates[n - 1] - std::max(0.0, r.boundary_rates[n - 1]));
  if (depth == 0) r.margin = 0;
  r.verdict = r.margin >= threshold ? "evidence" : "inconclusive";
  return r;
}

}  // namespace shiftlab
