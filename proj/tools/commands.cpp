#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "shiftlab/beta_shift.hpp"
#include "shiftlab/coded_system.hpp"
#include "shiftlab/decomposition.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/factor.hpp"
#include "shiftlab/layer_cache.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/sgap_shift.hpp"

namespace shiftlab::cli {

namespace {

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

SpecMode parse_mode(const std::string& s) {
  if (s == "S") return SpecMode::strict;
  if (s == "Per") return SpecMode::periodic;
  if (s == "W") return SpecMode::weak;
  throw ConfigError("specification mode must be S, Per or W, got '" + s + "'");
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("expected a comma-separated list of gap lengths, got '" + list + "'");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw ConfigError("empty gap set");
  return out;
}

void require_positive(std::size_t value, const char* name) {
  if (value == 0) throw ConfigError(std::string(name) + " must be positive");
}

/// Counts, rates and the language axioms for L_1..L_n.
CheckRecord counts_record(const Globals& g, const LanguageOracle& language, std::size_t n,
                          std::optional<double> exact) {
  const auto series = counts_for(g, language, n);
  const auto growth = growth_estimate(series);
  const auto axioms = check_language_axioms(language, std::min<std::size_t>(n, 12), g.enumeration());
  nlohmann::json values = to_json(growth);
  values["subword_closed"] = axioms.subword_closed;
  values["right_extendable"] = axioms.right_extendable;
  if (axioms.witness) values["axiom_witness"] = format_word(*axioms.witness);
  if (exact) {
    values["exact_entropy"] = number(*exact);
    values["rate_minus_entropy"] = number(growth.rates.back() - *exact);
  }
  return {"counts", n, values, verdict(axioms.subword_closed && axioms.right_extendable)};
}

/// #G_n, #C^p_n, #C^s_n and the parse cover for n = 1..N.
CheckRecord decomposition_record(const Globals& g, const System& s, std::size_t n) {
  const auto& d = *s.decomposition;
  std::vector<Count> core, pre, suf;
  for_each_layer(s.language, n, [&](std::size_t, const std::vector<Word>& layer) {
    std::size_t c = 0, p = 0, q = 0;
    for (const Word& w : layer) {
      c += d.core(w);
      p += d.prefixes(w);
      q += d.suffixes(w);
    }
    core.emplace_back(c);
    pre.emplace_back(p);
    suf.emplace_back(q);
  }, g.enumeration());
  const auto gap = parse_cover_gap(d, s.language, n, g.enumeration());
  nlohmann::json values{{"decomposition", d.name}, {"gap", d.gap}, {"core_counts", counts(core)},
                        {"prefix_counts", counts(pre)}, {"suffix_counts", counts(suf)},
                        {"parse_cover_gap", gap ? nlohmann::json(format_word(*gap)) : nlohmann::json(nullptr)}};
  return {"decomposition", n, values, verdict(!gap)};
}

System build_sgap(const Globals& g, const SGapOptions& o) {
  if (o.set.empty() == o.rule.empty()) throw ConfigError("sgap needs exactly one of --set and --rule");
  std::string spec = "sgap:";
  if (!o.set.empty()) {
    parse_sizes(o.set);
    spec += o.set;
  } else {
    spec += o.rule + ":" + std::to_string(o.max);
  }
  if (o.display) spec += ":display";
  return make_system(spec, g.system_options());
}

}  // namespace

std::vector<Count> counts_for(const Globals& g, const LanguageOracle& language, std::size_t n) {
  std::filesystem::path file;
  if (!g.cache_dir.empty()) file = std::filesystem::path(g.cache_dir) / "layers.tsv";
  else if (std::getenv("SHIFTLAB_CACHE_DIR")) file = LayerCache::default_path();
  if (file.empty()) return count_series(language, n, g.enumeration());
  LayerCache cache(file);
  auto series = cached_count_series(language, n, cache, g.enumeration());
  cache.save();
  return series;
}

void add_verify_checks(const Globals& g, const System& s, const VerifyOptions& o, Outcome& out) {
  if (!s.decomposition) throw ConfigError("system " + s.spec + " has no decomposition");
  require_positive(o.depth, "--depth");
  if (!(o.threshold > 0)) throw ConfigError("--threshold must be positive");
  const auto& d = *s.decomposition;
  const auto& l = s.language;
  const auto cfg = g.enumeration();
  for (const std::string& c : o.conditions) {
    if (c == "I") {
      SpecificationConfig sc;
      sc.max_length = o.spec_length;
      sc.tuple_size = o.tuple_size;
      sc.gap = o.gap.value_or(d.gap);
      sc.mode = parse_mode(o.mode);
      const auto r = check_specification(d, l, sc, cfg);
      out.budget_exceeded |= r.budget_exceeded;
      out.report.add({"condition-I", o.spec_length, to_json(r),
                      r.budget_exceeded ? "inconclusive" : verdict(r.passed)});
    } else if (c == "II") {
      const std::size_t window = o.depth - o.depth * 2 / 5;
      const auto r = check_condition_II(d, l, o.depth, window, o.threshold, cfg);
      out.report.add({"condition-II", o.depth, to_json(r), r.verdict});
    } else if (c == "III") {
      const auto r = check_condition_III(d, l, o.m, o.tau_max, o.tau_length, cfg);
      out.report.add({"condition-III", o.tau_length, to_json(r), r.tau ? "pass" : "inconclusive"});
    } else if (c == "cover") {
      const auto gap = parse_cover_gap(d, l, o.depth, cfg);
      out.report.add({"parse-cover", o.depth,
                      {{"uncovered", gap ? nlohmann::json(format_word(*gap)) : nlohmann::json(nullptr)}},
                      verdict(!gap)});
    } else if (c == "dichotomy") {
      const auto r = dichotomy_diagnostic(l, d, o.depth, cfg);
      out.report.add({"dichotomy", o.depth, to_json(r),
                      r.verdict == Dichotomy::inconclusive ? "inconclusive" : "evidence"});
    } else {
      throw ConfigError("unknown condition '" + c + "' (expected I, II, III, cover, dichotomy)");
    }
  }
}

Outcome run_beta(const Globals& g, const BetaOptions& o) {
  if (o.beta.empty()) throw ConfigError("--beta is required");
  const System s = make_system("beta:" + o.beta, g.system_options());
  const BetaShift& b = *s.beta;
  Outcome out{Report(s.spec, s.language.fingerprint())};

  const auto& w = b.digits();
  bool dominated = true;
  for (std::size_t k = 1; k < w.size() && dominated; ++k)
    dominated = !std::lexicographical_compare(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() - k),
                                              w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  nlohmann::json digits{{"beta", number(b.beta())},
                        {"symbols", b.symbols()},
                        {"digits", format_word(w)},
                        {"entropy", number(b.entropy())},
                        {"shift_dominated", dominated}};
  if (auto tail = b.periodic_tail()) digits["periodic_tail"] = {tail->first, tail->second};
  else digits["periodic_tail"] = nullptr;
  out.report.add({"digits", w.size(), digits, verdict(dominated)});

  if (o.enumerate > 0) out.report.add(counts_record(g, s.language, o.enumerate, s.exact_entropy));
  if (o.decompose) out.report.add(decomposition_record(g, s, std::max<std::size_t>(o.enumerate, 12)));
  if (!o.verify.empty()) {
    VerifyOptions v = o.checks;
    v.conditions = o.verify;
    if (o.enumerate > 0) v.depth = o.enumerate;
    add_verify_checks(g, s, v, out);
  }
  return out;
}

Outcome run_sgap(const Globals& g, const SGapOptions& o) {
  const System s = build_sgap(g, o);
  const SGapShift& shift = *s.sgap;
  Outcome out{Report(s.spec, s.language.fingerprint())};
  const auto e = shift.entropy(o.tol);
  if (o.entropy || o.enumerate == 0) {
    if (!(o.tol > 0)) throw ConfigError("--tol must be positive");
    nlohmann::json values = to_json(e);
    values["tolerance"] = o.tol;
    values["gaps"] = shift.gaps().str();
    out.report.add({"entropy", e.terms, values, verdict(std::abs(e.residual) < o.tol || e.lambda == 1.0)});
  }
  if (o.enumerate > 0) out.report.add(counts_record(g, s.language, o.enumerate, e.log_lambda));
  return out;
}

Outcome run_coded(const Globals& g, const CodedOptions& o) {
  if (o.generators.empty() == o.words.empty()) throw ConfigError("coded needs exactly one of --generators and --words");
  GeneratorSet gens = o.generators.empty() ? GeneratorSet::parse(o.words) : GeneratorSet::from_file(o.generators);
  if (o.truncation > 0) gens.with_truncation(o.truncation);
  const CodedSystem c(gens, o.generators.empty() ? "coded(" + o.words + ")" : "coded(" + o.generators + ")");
  const LanguageOracle l = c.language();
  Outcome out{Report(c.name(), c.fingerprint())};
  out.report.add({"generators", gens.words().size(),
                  {{"words", words(gens.words())}, {"max_length", gens.max_length()},
                   {"alphabet", gens.alphabet_size()}, {"truncation", gens.truncation()}},
                  "pass"});
  if (o.cn > 0) {
    const auto r = c.theorem_b_report(o.cn, g.enumeration());
    out.report.add({"theorem-B", o.cn, to_json(r), r.verdict == "inconclusive" ? "inconclusive" : "evidence"});
  }
  if (o.enumerate > 0) out.report.add(counts_record(g, l, o.enumerate, std::nullopt));
  return out;
}

Outcome run_verify(const Globals& g, const std::string& spec, const VerifyOptions& o) {
  const System s = make_system(spec, g.system_options());
  Outcome out{Report(s.spec, s.language.fingerprint())};
  add_verify_checks(g, s, o, out);
  return out;
}

Outcome run_measure(const Globals& g, const MeasureOptions& o) {
  require_positive(o.mme_depth, "--mme-depth");
  require_positive(o.per, "--per");
  require_positive(o.targets_len, "--targets-len");
  const System s = make_system(o.system, g.system_options());
  Outcome out{Report(s.spec, s.language.fingerprint())};
  const auto targets = enumerate(s.language, o.targets_len, g.enumeration());

  std::optional<ParryMeasure> parry;
  const FollowerAutomaton* a = s.language.automaton();
  if (a && !a->valid_depth) parry.emplace(*a);
  auto deviation = [&](const EmpiricalMeasure& m) {
    double worst = 0;
    for (const Word& w : targets) worst = std::max(worst, std::abs(m.at(w) - (*parry)(w)));
    return worst;
  };

  if (parry) {
    auto values = to_json(parry->measure(targets));
    values["lambda"] = number(parry->lambda());
    values["residual"] = number(parry->residual());
    values["iterations"] = parry->iterations();
    out.report.add({"parry", o.targets_len, values, verdict(parry->residual() < 1e-9)});
  }

  const auto mme = empirical_mme(s.language, o.mme_depth, targets);
  auto mme_values = to_json(mme);
  if (parry) mme_values["max_deviation_from_parry"] = number(deviation(mme));
  out.report.add({"word-average", o.mme_depth, mme_values, "evidence"});

  const auto ps = periodic_points(s.language, o.per, 64, g.enumeration());
  const auto per = periodic_measure(ps, targets);
  auto per_values = to_json(per);
  per_values["points"] = ps.total();
  per_values["undecided"] = words(ps.undecided);
  if (parry) per_values["max_deviation_from_parry"] = number(deviation(per));
  out.report.add({"periodic", o.per, per_values, ps.undecided.empty() ? "evidence" : "inconclusive"});
  out.report.add({"periodic-entropy", o.per, to_json(entropy_from_periodic(ps)), "evidence"});

  if (o.gibbs) {
    if (!s.exact_entropy) throw ConfigError("--gibbs needs a system with known entropy");
    if (!s.decomposition) throw ConfigError("--gibbs needs a decomposition");
    const auto r = gibbs_report(s.language, *s.decomposition, *s.exact_entropy, o.gibbs_n, o.mme_depth, g.enumeration());
    const bool steady = !r.lower_trending_to_zero && !r.upper_diverging;
    out.report.add({"gibbs", o.gibbs_n, to_json(r), steady ? "evidence" : "inconclusive"});
  }
  return out;
}

Outcome run_factor(const Globals& g, const FactorOptions& o) {
  require_positive(o.depth, "--depth");
  if (o.code.empty()) throw ConfigError("--code is required");
  const System s = make_system(o.system, g.system_options());
  const BlockCode code = BlockCode::from_file(o.code);
  code.validate(s.language, g.enumeration());
  const FactorSystem factor(s.language, code);
  const LanguageOracle image = factor.language();
  Outcome out{Report(factor.name(), image.fingerprint())};

  const std::size_t len = std::max<std::size_t>(3, code.window());
  const auto layer = enumerate(s.language, len, g.enumeration());
  std::size_t pairs = 0;
  std::optional<std::pair<Word, Word>> broken;
  for (const Word& v : layer)
    for (const Word& w : layer) {
      if (!s.language.contains(concat(v, w))) continue;
      ++pairs;
      if (!broken && !homomorphism_check(code, v, w).holds()) broken = {v, w};
    }
  nlohmann::json identities{{"pairs", pairs}};
  if (broken) identities["counterexample"] = {format_word(broken->first), format_word(broken->second)};
  out.report.add({"block-identities", len, identities, verdict(!broken)});
  out.report.add(counts_record(g, image, o.depth, std::nullopt));

  if (o.verify) {
    if (!s.decomposition) throw ConfigError("system " + s.spec + " has no decomposition");
    const auto td = factor.transport(*s.decomposition, 12, g.enumeration());
    SpecificationConfig sc;
    sc.gap = td.gap;
    sc.max_length = std::min<std::size_t>(o.depth, 5);
    sc.tuple_size = 3;
    const auto spec = check_specification(td, image, sc, g.enumeration());
    out.budget_exceeded |= spec.budget_exceeded;
    out.report.add({"transported-specification", sc.max_length, to_json(spec),
                    spec.budget_exceeded ? "inconclusive" : verdict(spec.passed)});
    const auto gap = parse_cover_gap(td, image, o.depth, g.enumeration());
    out.report.add({"transported-parse-cover", o.depth,
                    {{"uncovered", gap ? nlohmann::json(format_word(*gap)) : nlohmann::json(nullptr)}},
                    verdict(!gap)});
    const auto r = factor_entropy_gap(factor, td, o.depth, 0.05, g.enumeration());
    out.report.add({"transported-condition-II", o.depth, to_json(r), r.verdict});
  }
  return out;
}

}  // namespace shiftlab::cli
