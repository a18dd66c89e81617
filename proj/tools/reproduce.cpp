#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cli.hpp"
#include "shiftlab/beta_shift.hpp"
#include "shiftlab/coded_system.hpp"
#include "shiftlab/decomposition.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/factor.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/sgap_shift.hpp"

namespace shiftlab::cli {

namespace {

using Float = boost::multiprecision::cpp_bin_float_100;

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

const double kPhi = (1 + std::sqrt(5.0)) / 2;

Outcome start(const std::string& system, const std::string& fingerprint) {
  return Outcome{Report(system, fingerprint)};
}

/// mu[w] = phi v_{w_1} v_{w_n} / ((phi^2 + 1) phi^n) with v = (phi, 1).
double parry_golden(const Word& w) {
  if (w.empty()) return 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == 1 && w[i - 1] == 1) return 0;
  auto v = [](Symbol s) { return s == 0 ? kPhi : 1.0; };
  return kPhi * v(w.front()) * v(w.back()) / ((kPhi * kPhi + 1) * std::pow(kPhi, static_cast<double>(w.size())));
}

Outcome beta_digits(const Globals&) {
  auto out = start("beta:2,golden,1.8", "beta-digits");
  const std::size_t n = 64;
  const std::vector<std::pair<std::string, Float>> bases{
      {"2", Float(2)}, {"golden", (1 + boost::multiprecision::sqrt(Float(5))) / 2}, {"1.8", Float(9) / 5}};
  for (const auto& [spec, beta] : bases) {
    const BetaShift shift = BetaShift::parse(spec, n);
    const auto& w = shift.digits();
    Float sum = 0, power = 1;
    for (std::size_t j = 0; j < n; ++j) {
      power /= beta;
      sum += Float(w[j]) * power;
    }
    bool dominated = true;
    for (std::size_t k = 1; k < n; ++k)
      if (!lex_leq(WordView(w).subspan(k), WordView(w).first(n - k))) dominated = false;
    const bool in_range = sum >= 1 - 2 * power && sum <= 1;
    out.report.add({"digits:" + spec, n,
                    {{"digits", format_word(w)},
                     {"one_minus_sum", number(static_cast<double>(1 - sum))},
                     {"two_beta_minus_n", number(static_cast<double>(2 * power))},
                     {"shift_dominated", dominated}},
                    verdict(in_range && dominated)});
  }
  return out;
}

Outcome fibonacci_counts(const Globals& g) {
  const auto golden = BetaShift::parse("golden", 64).language();
  auto out = start("beta:golden", golden.fingerprint());
  const auto dp = count_dp_series(golden, 25);
  std::vector<Count> fib;
  Count a = 1, b = 2;
  for (std::size_t n = 1; n <= 25; ++n) {
    fib.push_back(b);
    const Count c = a + b;
    a = b;
    b = c;
  }
  std::vector<Count> brute;
  for_each_layer(golden, 12, [&](std::size_t, const std::vector<Word>& layer) { brute.emplace_back(layer.size()); },
                 g.enumeration());
  const bool match = dp == fib && std::equal(brute.begin(), brute.end(), dp.begin());
  out.report.add({"fibonacci-counts", 25, {{"dp", counts(dp)}, {"fibonacci_n_plus_2", counts(fib)}, {"enumerated", counts(brute)}},
                  verdict(match)});
  return out;
}

Outcome sgap_entropy(const Globals&) {
  auto out = start("sgap:1,2;0,1;all:64", "sgap-entropy");
  const SGapShift s12(GapSet::finite({1, 2}));
  const auto e12 = s12.entropy(1e-14);
  const double rate = log_count(count_dp(s12.language(), 30)) / 30;
  auto v12 = to_json(e12);
  v12["rate_30"] = number(rate);
  out.report.add({"sgap:1,2", 30, v12, verdict(std::abs(e12.residual) < 1e-10 && std::abs(rate - e12.log_lambda) < 0.05)});
  const auto e01 = SGapShift(GapSet::finite({0, 1})).entropy(1e-14);
  auto v01 = to_json(e01);
  v01["golden_ratio"] = number(kPhi);
  out.report.add({"sgap:0,1", 0, v01, verdict(std::abs(e01.lambda - kPhi) < 1e-10)});
  const auto all = SGapShift(GapSet::rule("all", 64)).entropy(1e-14);
  out.report.add({"sgap:all:64", 64, to_json(all), verdict(std::abs(all.lambda - 2) < 1e-6)});
  return out;
}

Outcome decomposition_conditions(const Globals& g) {
  auto out = start("beta:golden;sgap:1,2", "decomposition-conditions");
  for (const std::string spec : {"beta:golden", "sgap:1,2"}) {
    const System s = make_system(spec, g.system_options());
    VerifyOptions v;
    v.conditions = {"I", "III", "cover"};
    v.depth = 12;
    v.spec_length = 6;
    v.tuple_size = 3;
    v.gap = 0;
    v.m = 3;
    v.tau_length = 10;
    Outcome part{Report(spec, s.language.fingerprint())};
    add_verify_checks(g, s, v, part);
    const auto r = check_condition_II(*s.decomposition, s.language, 25, 15, 0.3, g.enumeration());
    part.report.add({"condition-II", 25, to_json(r), verdict(r.min_window_margin >= 0.3)});
    for (auto c : part.report.checks()) {
      c.name = spec + ":" + c.name;
      out.report.add(std::move(c));
    }
  }
  return out;
}

Outcome lemma_bounds(const Globals& g) {
  auto out = start("beta:golden;sgap:1,2", "lemma-bounds");
  for (const std::string spec : {"beta:golden", "sgap:1,2"}) {
    const System s = make_system(spec, g.system_options());
    const auto& d = *s.decomposition;
    const double h = *s.exact_entropy;
    std::vector<Count> core;
    bool bounded = true;
    for (std::size_t n = 1; n <= 25; ++n) {
      const auto c = filter_layer(s.language, n, d.core, g.enumeration()).size();
      core.emplace_back(c);
      if (std::log(static_cast<double>(c)) > static_cast<double>(n + d.gap) * h + 1e-12) bounded = false;
    }
    out.report.add({spec + ":core-count-bound", 25, {{"core_counts", counts(core)}, {"entropy", number(h)}}, verdict(bounded)});

    std::optional<std::size_t> found;
    std::vector<double> worst_density;
    for (std::size_t m = 0; m <= 6 && !found; ++m) {
      double worst = 1;
      for (std::size_t n = 1; n <= 20; ++n) {
        const auto layer = enumerate(s.language, n, g.enumeration());
        std::size_t in = 0;
        for (const Word& w : layer) in += in_g_of_m(d, w, m);
        worst = std::min(worst, static_cast<double>(in) / static_cast<double>(layer.size()));
      }
      worst_density.push_back(worst);
      if (worst >= 0.9) found = m;
    }
    out.report.add({spec + ":G(M)-density", 20,
                    {{"min_density_by_M", numbers(worst_density)},
                     {"M", found ? nlohmann::json(*found) : nlohmann::json(nullptr)}},
                    verdict(found.has_value())});
  }
  return out;
}

Outcome gibbs_golden(const Globals& g) {
  const BetaShift golden = BetaShift::parse("golden", 64);
  auto out = start("beta:golden", golden.fingerprint());
  const double lower = 0.9 * kPhi * kPhi / (kPhi * kPhi + 1);
  const double upper = 1.1 * kPhi * kPhi * kPhi / (kPhi * kPhi + 1);
  const auto r = gibbs_report(golden.language(), golden.decomposition(), std::log(kPhi), 8, 24, g.enumeration());
  auto values = to_json(r);
  values["c_star"] = number(lower);
  values["C_star"] = number(upper);
  out.report.add({"gibbs", 8, values, verdict(r.rows.size() == 8 && r.lower >= lower && r.upper <= upper)});
  return out;
}

Outcome periodic_golden(const Globals& g) {
  const auto golden = BetaShift::parse("golden", 64).language();
  auto out = start("beta:golden", golden.fingerprint());
  const auto cylinders = enumerate(golden, 3, g.enumeration());
  auto deviation = [&](std::size_t n) {
    const auto mu = periodic_measure(periodic_points(golden, n, 64, g.enumeration()), cylinders);
    double worst = 0;
    for (const Word& w : cylinders) worst = std::max(worst, std::abs(mu.at(w) - parry_golden(w)));
    return worst;
  };
  const double dev8 = deviation(8), dev20 = deviation(20);
  out.report.add({"cylinder-deviation", 20, {{"n8", number(dev8)}, {"n20", number(dev20)}},
                  verdict(dev20 <= 0.05 && dev20 <= dev8)});
  const auto pe = entropy_from_periodic(periodic_points(golden, 18, 64, g.enumeration()));
  auto values = to_json(pe);
  values["log_phi"] = number(std::log(kPhi));
  out.report.add({"periodic-rate", 18, values, verdict(std::abs(pe.per_rates.back() - std::log(kPhi)) <= 0.05)});
  return out;
}

Outcome factor_transport(const Globals& g) {
  const BetaShift golden = BetaShift::parse("golden", 64);
  const auto source = golden.language();
  const auto d = golden.decomposition();
  auto out = start("beta:golden", source.fingerprint());
  BlockCode swap;
  swap.table = {{Word{0}, 1}, {Word{1}, 0}};
  BlockCode edge;
  edge.k = 1;
  for (const Word& w : enumerate(source, 3, g.enumeration())) edge.table[w] = (w[1] == 0 && (w[0] == 1 || w[2] == 1)) ? 1 : 0;
  for (const BlockCode& code : {swap, edge}) {
    const std::string tag = "k=" + std::to_string(code.k);
    bool identities = true;
    const auto layer = enumerate(source, 3, g.enumeration());
    for (const Word& v : layer)
      for (const Word& w : layer)
        if (source.contains(concat(v, w)) && !homomorphism_check(code, v, w).holds()) identities = false;
    out.report.add({tag + ":identities", 3, {{"pairs_checked", layer.size() * layer.size()}}, verdict(identities)});

    const FactorSystem factor(source, code);
    const auto image = factor.language();
    const auto td = factor.transport(d, 12, g.enumeration());
    const std::size_t l2k = enumerate(source, 2 * code.k, g.enumeration()).size();
    std::vector<Count> source_prefix, image_prefix;
    bool bound = true;
    for (std::size_t n = 1; n <= 10; ++n) {
      std::size_t a = 0, b = 0;
      for (const Word& w : enumerate(source, n, g.enumeration())) a += d.prefixes(w);
      for (const Word& w : enumerate(image, n, g.enumeration())) b += td.prefixes(w);
      source_prefix.emplace_back(a);
      image_prefix.emplace_back(b);
      if (b > l2k * a) bound = false;
    }
    out.report.add({tag + ":prefix-count-bound", 10,
                    {{"source", counts(source_prefix)}, {"factor", counts(image_prefix)}, {"L_2k", l2k}},
                    verdict(bound)});
    SpecificationConfig sc;
    sc.gap = d.gap + 2 * code.k;
    sc.max_length = 5;
    sc.tuple_size = 3;
    const auto spec = check_specification(td, image, sc, g.enumeration());
    out.budget_exceeded |= spec.budget_exceeded;
    out.report.add({tag + ":transported-specification", 5, to_json(spec),
                    spec.budget_exceeded ? "inconclusive" : verdict(spec.passed)});
  }
  return out;
}

Outcome sgap_min_gap(const Globals& g) {
  const SGapShift shift(GapSet::rule("pow2", 64));
  const auto language = shift.language();
  auto out = start(shift.name(), language.fingerprint());
  nlohmann::json rows = nlohmann::json::array();
  std::optional<std::size_t> previous;
  bool increasing = true;
  for (std::size_t n = 2; n <= 4; ++n) {
    const std::size_t i = (std::size_t{1} << (n - 1)) + 1;
    Word u{1};
    u.insert(u.end(), i, 0);
    const auto gap = min_gap(language, u, Word{1}, 16, g.enumeration());
    if (!gap || (previous && gap->t <= *previous)) increasing = false;
    if (gap) previous = gap->t;
    rows.push_back({{"n", n}, {"u", format_word(u)}, {"w", "1"},
                    {"t", gap ? nlohmann::json(gap->t) : nlohmann::json(nullptr)},
                    {"connector", gap ? nlohmann::json(format_word(gap->connector)) : nlohmann::json(nullptr)}});
  }
  out.report.add({"min-gap", 4, {{"rows", rows}}, verdict(increasing)});
  return out;
}

Outcome coded_consistency(const Globals&) {
  const BetaShift golden = BetaShift::parse("golden", 64);
  const CodedSystem coded(GeneratorSet(golden.generators(12)));
  auto out = start("beta:golden", golden.fingerprint());
  std::size_t checked = 0, mismatches = 0;
  for (std::size_t n = 0; n <= 10; ++n)
    for (const Word& w : enumerate(full_shift(2), n)) {
      ++checked;
      mismatches += coded.contains(w) != golden.contains(w);
    }
  out.report.add({"coded-vs-direct", 10,
                  {{"generators", coded.generators().words().size()}, {"words", checked}, {"mismatches", mismatches}},
                  verdict(mismatches == 0)});
  return out;
}

using Script = Outcome (*)(const Globals&);

const std::vector<std::pair<std::string, Script>>& scripts() {
  static const std::vector<std::pair<std::string, Script>> all{
      {"beta-digits", beta_digits},
      {"fibonacci-counts", fibonacci_counts},
      {"sgap-entropy", sgap_entropy},
      {"decomposition-conditions", decomposition_conditions},
      {"lemma-bounds", lemma_bounds},
      {"gibbs-golden", gibbs_golden},
      {"periodic-golden", periodic_golden},
      {"factor-transport", factor_transport},
      {"sgap-min-gap", sgap_min_gap},
      {"coded-consistency", coded_consistency},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& reproduce_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : scripts()) out.push_back(id);
    out.push_back("all");
    return out;
  }();
  return ids;
}

std::vector<std::pair<std::string, Outcome>> run_reproduce(const Globals& g, const std::string& id) {
  std::vector<std::pair<std::string, Outcome>> out;
  for (const auto& [name, fn] : scripts())
    if (id == "all" || id == name) out.emplace_back(name, fn(g));
  if (out.empty()) throw ConfigError("unknown reproduce script '" + id + "'");
  return out;
}

}  // namespace shiftlab::cli
