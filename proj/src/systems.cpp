#include "shiftlab/systems.hpp"

#include <cmath>
#include <sstream>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError("expected a nonnegative integer for " + what + ", got '" + s + "'");
  try {
    return std::stoul(s);
  } catch (const std::exception&) {
    throw ConfigError(what + " out of range: '" + s + "'");
  }
}

Decomposition whole_language(const LanguageOracle& language, std::string name) {
  Decomposition d;
  d.name = std::move(name);
  auto l = language;
  d.core = [l](WordView w) { return l.contains(w); };
  d.prefixes = [](WordView w) { return w.empty(); };
  d.suffixes = [](WordView w) { return w.empty(); };
  return d;
}

System sgap_system(const std::string& spec, const std::string& body, const SystemOptions& options) {
  auto parts = split(body, ':');
  GapBoundary boundary = GapBoundary::two_sided;
  if (!parts.empty() && (parts.back() == "display" || parts.back() == "two-sided")) {
    if (parts.back() == "display") boundary = GapBoundary::display;
    parts.pop_back();
  }
  if (parts.empty() || parts[0].empty()) throw ConfigError("sgap: missing gap set in '" + spec + "'");
  GapSet gaps = GapSet::finite({0});
  if (parts[0] == "pow2" || parts[0] == "all") {
    if (parts.size() > 2) throw ConfigError("sgap: too many fields in '" + spec + "'");
    const std::size_t cap = parts.size() == 2 ? parse_size(parts[1], "gap cap") : options.gap_cap;
    gaps = GapSet::rule(parts[0], cap);
  } else {
    if (parts.size() > 1) throw ConfigError("sgap: unexpected field '" + parts[1] + "' in '" + spec + "'");
    std::vector<std::size_t> elements;
    for (const auto& tok : split(parts[0], ',')) elements.push_back(parse_size(tok, "gap set element"));
    gaps = GapSet::finite(std::move(elements));
  }
  auto shift = std::make_shared<const SGapShift>(std::move(gaps), boundary);
  System s{spec, shift->language(), shift->decomposition(), shift->entropy().log_lambda, nullptr, shift, nullptr};
  return s;
}

}  // namespace

System make_system(const std::string& spec, const SystemOptions& options) {
  const auto colon = spec.find(':');
  if (spec.empty() || colon == std::string::npos || colon + 1 == spec.size())
    throw ConfigError("system spec must look like <family>:<parameters>, got '" + spec + "'");
  const std::string family = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);

  if (family == "beta") {
    auto shift = std::make_shared<const BetaShift>(BetaShift::parse(body, options.digits));
    return System{spec, shift->language(), shift->decomposition(), shift->entropy(), shift, nullptr, nullptr};
  }
  if (family == "sgap") return sgap_system(spec, body, options);
  if (family == "coded" || family == "coded-words") {
    GeneratorSet gens = family == "coded" ? GeneratorSet::from_file(body) : GeneratorSet::parse(body);
    auto coded = std::make_shared<const CodedSystem>(std::move(gens), "coded(" + body + ")");
    return System{spec, coded->language(), coded->decomposition(), std::nullopt, nullptr, nullptr, coded};
  }
  if (family == "full") {
    const std::size_t p = parse_size(body, "alphabet size");
    if (p < 2 || p > 255) throw ConfigError("full shift alphabet must lie in [2, 255]");
    LanguageOracle l = full_shift(static_cast<int>(p));
    auto d = whole_language(l, l.name());
    return System{spec, l, d, std::log(static_cast<double>(p)), nullptr, nullptr, nullptr};
  }
  if (family == "orbit") {
    LanguageOracle l = periodic_orbit_language(parse_word(body));
    auto d = whole_language(l, l.name());
    d.periodic_spec = false;
    return System{spec, l, d, 0.0, nullptr, nullptr, nullptr};
  }
  throw ConfigError("unknown system family '" + family + "' (expected beta, sgap, coded, coded-words, full, orbit)");
}

}  // namespace shiftlab
