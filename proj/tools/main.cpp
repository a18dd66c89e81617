// shiftlab: build beta-shifts, S-gap shifts and coded systems, check decomposition
// conditions and measures, and emit reports.
//
// Exit codes: 0 no failing check, 1 a check failed, 2 bad configuration,
// 3 budget exceeded, 4 internal error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "shiftlab/errors.hpp"

using namespace shiftlab;
using namespace shiftlab::cli;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

std::string extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::json: return ".json";
    case ReportFormat::csv: return ".csv";
    case ReportFormat::tsv: return ".tsv";
  }
  return {};
}

void summarize(const Report& r, std::ostream& out) {
  for (const auto& c : r.checks()) out << c.verdict << "\t" << c.name << "\n";
}

/// Writes the report to --out (summary on stdout) or renders it to stdout.
int emit(const Globals& g, const Outcome& o) {
  const ReportFormat f = parse_report_format(g.format);
  if (g.out.empty()) {
    std::cout << o.report.render(f);
  } else {
    o.report.write(g.out, f);
    summarize(o.report, std::cout);
  }
  if (o.budget_exceeded) return kExitBudget;
  return o.report.any_failed() ? kExitFail : 0;
}

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto end = comma == std::string::npos ? list.size() : comma;
    if (end > start) out.push_back(list.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftlab: symbolic dynamics workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format,--report", g.format, "Report format: json, csv or tsv")
      ->check(CLI::IsMember({"json", "csv", "tsv"}));
  app.add_option("--out", g.out, "Report file (stdout when omitted)");
  app.add_option("--threads", g.threads, "Worker threads for enumeration")->check(CLI::Range(1u, 1024u));
  app.add_option("--max-words", g.max_words, "Per-layer enumeration budget")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", g.cache_dir, "Layer cache directory (overrides SHIFTLAB_CACHE_DIR)");
  app.add_option("--digits", g.digits, "Digits of w(beta) to compute")->check(CLI::PositiveNumber);
  app.add_option("--gap-cap", g.gap_cap, "Cap for infinite gap rules")->check(CLI::PositiveNumber);

  auto add_verify_options = [](CLI::App* cmd, VerifyOptions& v) {
    cmd->add_option("--depth", v.depth, "Depth for condition II, parse cover and dichotomy");
    cmd->add_option("--mode", v.mode, "Specification mode: S, Per or W");
    cmd->add_option("--gap", v.gap, "Connector length t (default: the decomposition's)");
    cmd->add_option("--tuple-size", v.tuple_size, "Specification tuple size m");
    cmd->add_option("--spec-length", v.spec_length, "Longest G-word in specification tuples");
    cmd->add_option("--M", v.m, "Condition III bound M");
    cmd->add_option("--tau-max", v.tau_max, "Condition III search limit");
    cmd->add_option("--tau-length", v.tau_length, "Condition III longest v");
    cmd->add_option("--threshold", v.threshold, "Condition II margin threshold");
  };

  BetaOptions beta;
  std::string beta_verify;
  auto* beta_cmd = app.add_subcommand("beta", "Beta-shift digits, counts and decomposition");
  beta_cmd->add_option("--beta", beta.beta, "golden, 1.8, 3/2, root(x^3-x-1, near=1.32), ...")->required();
  beta_cmd->add_option("--enumerate", beta.enumerate, "Count L_1..L_N");
  beta_cmd->add_flag("--decompose", beta.decompose, "Tabulate C^p, G, C^s and the parse cover");
  beta_cmd->add_option("--verify", beta_verify, "Conditions to check, e.g. I,II,III");
  add_verify_options(beta_cmd, beta.checks);

  SGapOptions sgap;
  auto* sgap_cmd = app.add_subcommand("sgap", "S-gap shift entropy and counts");
  auto* set_opt = sgap_cmd->add_option("--set", sgap.set, "Finite gap set, e.g. 1,2");
  auto* rule_opt = sgap_cmd->add_option("--rule", sgap.rule, "Infinite gap rule: pow2 or all");
  set_opt->excludes(rule_opt);
  sgap_cmd->add_option("--max", sgap.max, "Cap for --rule");
  sgap_cmd->add_flag("--display", sgap.display, "One-sided display convention for boundary runs");
  sgap_cmd->add_flag("--entropy", sgap.entropy, "Solve sum lambda^{-n-1} = 1");
  sgap_cmd->add_option("--tol", sgap.tol, "Entropy tolerance");
  sgap_cmd->add_option("--enumerate", sgap.enumerate, "Count L_1..L_N");

  CodedOptions coded;
  auto* coded_cmd = app.add_subcommand("coded", "Coded system from a generator list");
  auto* gen_opt = coded_cmd->add_option("--generators", coded.generators, "Generator file, one word per line");
  auto* words_opt = coded_cmd->add_option("--words", coded.words, "Comma-separated generators");
  gen_opt->excludes(words_opt);
  coded_cmd->add_option("--cn", coded.cn, "Tabulate c_n to this depth");
  coded_cmd->add_option("--enumerate", coded.enumerate, "Count L_1..L_N");
  coded_cmd->add_option("--truncation", coded.truncation, "Generator list is truncated at this length");

  std::string verify_system, conditions = "I,II,III";
  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check decomposition conditions on a system");
  verify_cmd->add_option("--system", verify_system, "System spec, e.g. beta:golden or sgap:1,2")->required();
  verify_cmd->add_option("--conditions", conditions, "Any of I, II, III, cover, dichotomy");
  add_verify_options(verify_cmd, verify);

  MeasureOptions measure;
  auto* measure_cmd = app.add_subcommand("measure", "Word-average, periodic, Parry and Gibbs evidence");
  measure_cmd->add_option("--system", measure.system, "System spec")->required();
  measure_cmd->add_option("--mme-depth", measure.mme_depth, "Word length m for word averages");
  measure_cmd->add_option("--per", measure.per, "Period bound for periodic measures");
  measure_cmd->add_option("--targets-len", measure.targets_len, "Cylinder length");
  measure_cmd->add_flag("--gibbs", measure.gibbs, "Gibbs ratios on G_n and L_n");
  measure_cmd->add_option("--gibbs-n", measure.gibbs_n, "Largest n for the Gibbs table");

  FactorOptions factor;
  auto* factor_cmd = app.add_subcommand("factor", "Image of a system under a sliding block code");
  factor_cmd->add_option("--system", factor.system, "Source system spec")->required();
  factor_cmd->add_option("--code", factor.code, "Block code JSON file")->required();
  factor_cmd->add_flag("--verify", factor.verify, "Transport the decomposition and check it");
  factor_cmd->add_option("--depth", factor.depth, "Depth for counts and checks");

  std::string script;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Run a pinned acceptance script");
  reproduce_cmd->add_option("id", script, "Script id")->required()->check(CLI::IsMember(reproduce_ids()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (!g.cache_dir.empty()) setenv("SHIFTLAB_CACHE_DIR", g.cache_dir.c_str(), 1);
    if (*beta_cmd) {
      beta.verify = split(beta_verify);
      return emit(g, run_beta(g, beta));
    }
    if (*sgap_cmd) return emit(g, run_sgap(g, sgap));
    if (*coded_cmd) return emit(g, run_coded(g, coded));
    if (*verify_cmd) {
      verify.conditions = split(conditions);
      return emit(g, run_verify(g, verify_system, verify));
    }
    if (*measure_cmd) return emit(g, run_measure(g, measure));
    if (*factor_cmd) return emit(g, run_factor(g, factor));
    if (*reproduce_cmd) {
      const ReportFormat f = parse_report_format(g.format);
      int status = 0;
      for (const auto& [id, outcome] : run_reproduce(g, script)) {
        if (g.out.empty()) {
          std::cout << outcome.report.render(f);
        } else {
          outcome.report.write(std::filesystem::path(g.out) / (id + extension(f)), f);
          for (const auto& c : outcome.report.checks()) std::cout << c.verdict << "\t" << id << "\t" << c.name << "\n";
        }
        if (outcome.budget_exceeded) status = std::max(status, kExitBudget);
        else if (outcome.report.any_failed()) status = std::max(status, kExitFail);
      }
      return status;
    }
  } catch (const ConfigError& e) {
    std::cerr << "shiftlab: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PrecisionError& e) {
    std::cerr << "shiftlab: precision: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DigitCacheTooShort& e) {
    std::cerr << "shiftlab: " << e.what() << " (raise --digits)\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "shiftlab: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "shiftlab: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
