#include "shiftlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "shiftlab/errors.hpp"

namespace shiftlab {

ReportFormat parse_report_format(const std::string& text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  if (text == "tsv") return ReportFormat::tsv;
  throw ConfigError("unknown report format '" + text + "' (expected json, csv or tsv)");
}

Report::Report(std::string system, std::string fingerprint)
    : system_(std::move(system)), fingerprint_(std::move(fingerprint)) {}

void Report::add(CheckRecord record) {
  const auto& v = record.verdict;
  if (v != "pass" && v != "fail" && v != "evidence" && v != "inconclusive")
    throw std::invalid_argument("report verdict must be pass, fail, evidence or inconclusive, got '" + v + "'");
  checks_.push_back(std::move(record));
}

bool Report::any_failed() const noexcept {
  for (const auto& c : checks_)
    if (c.verdict == "fail") return true;
  return false;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_)
    checks.push_back({{"name", c.name}, {"depth", c.depth}, {"verdict", c.verdict}, {"values", c.values}});
  return {{"schema", schema}, {"system", system_}, {"fingerprint", fingerprint_}, {"checks", checks}};
}

std::string Report::to_delimited(char separator) const {
  auto field = [separator](const std::string& s) {
    const bool quote = s.find_first_of(std::string(1, separator) + "\"\n") != std::string::npos;
    if (!quote) return s;
    if (separator == '\t') {
      std::string out = s;
      for (auto& c : out)
        if (c == '\t' || c == '\n') c = ' ';
      return out;
    }
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out;
  const std::string sep(1, separator);
  out += "check" + sep + "depth" + sep + "verdict" + sep + "values\n";
  for (const auto& c : checks_)
    out += field(c.name) + sep + std::to_string(c.depth) + sep + c.verdict + sep + field(c.values.dump()) + "\n";
  return out;
}

std::string Report::render(ReportFormat format) const {
  switch (format) {
    case ReportFormat::json: return to_json().dump(2) + "\n";
    case ReportFormat::csv: return to_delimited(',');
    case ReportFormat::tsv: return to_delimited('\t');
  }
  return {};
}

void Report::write(const std::filesystem::path& file, ReportFormat format) const {
  write_atomically(file, render(format));
}

void write_atomically(const std::filesystem::path& file, const std::string& contents) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tmp = std::filesystem::path(file.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

nlohmann::json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

nlohmann::json numbers(const std::vector<double>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

nlohmann::json counts(const std::vector<Count>& xs) {
  nlohmann::json out = nlohmann::json::array();
  // exact decimal strings beyond 2^53, numbers below
  for (const auto& c : xs) {
    if (c < (Count(1) << 53)) out.push_back(c.convert_to<std::uint64_t>());
    else out.push_back(c.str());
  }
  return out;
}

nlohmann::json words(const std::vector<Word>& ws) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : ws) out.push_back(format_word(w));
  return out;
}

nlohmann::json to_json(const GrowthEstimate& g) {
  nlohmann::json zeros = nlohmann::json::array();
  for (auto n : g.zero_lengths) zeros.push_back(n);
  return {{"counts", counts(g.counts)},
          {"rates", numbers(g.rates)},
          {"limsup_proxy", number(g.limsup_proxy)},
          {"zero_lengths", zeros}};
}

nlohmann::json to_json(const SpecificationReport& r) {
  nlohmann::json j = {{"mode", to_string(r.mode)},
                      {"gap", r.gap},
                      {"tuple_size", r.tuple_size},
                      {"max_length", r.max_length},
                      {"core_words", r.core_words},
                      {"tuples_checked", r.tuples_checked},
                      {"passed", r.passed},
                      {"budget_exceeded", r.budget_exceeded},
                      {"counterexample", words(r.counterexample)},
                      {"note", r.note}};
  if (r.witness) j["witness"] = words(*r.witness);
  return j;
}

nlohmann::json to_json(const ConditionIIReport& r) {
  return {{"depth", r.depth},
          {"window_start", r.window_start},
          {"language_counts", counts(r.language_counts)},
          {"boundary_counts", counts(r.boundary_counts)},
          {"language_rates", numbers(r.language_rates)},
          {"boundary_rates", numbers(r.boundary_rates)},
          {"margins", numbers(r.margins)},
          {"min_window_margin", number(r.min_window_margin)},
          {"verdict", r.verdict}};
}

nlohmann::json to_json(const ConditionIIIReport& r) {
  nlohmann::json j = {{"M", r.m}, {"tau_max", r.tau_max}, {"max_length", r.max_length},
                      {"words_checked", r.words_checked}};
  j["tau"] = r.tau ? nlohmann::json(*r.tau) : nlohmann::json(nullptr);
  j["family_tau"] = r.family_tau ? nlohmann::json(*r.family_tau) : nlohmann::json(nullptr);
  if (r.hardest) j["hardest"] = format_word(*r.hardest);
  if (r.failure) j["failure"] = format_word(*r.failure);
  return j;
}

nlohmann::json to_json(const DichotomyReport& r) {
  nlohmann::json j = {{"verdict", to_string(r.verdict)}, {"depth", r.depth}, {"count", r.count.str()}};
  if (r.witness) j["witness"] = {format_word(r.witness->first), format_word(r.witness->second)};
  if (r.orbit) j["orbit"] = format_word(*r.orbit);
  return j;
}

nlohmann::json to_json(const SGapEntropy& e) {
  char text[32];
  std::snprintf(text, sizeof text, "%.12g", e.lambda);
  return {{"lambda", number(e.lambda)}, {"lambda_12", text}, {"log_lambda", number(e.log_lambda)},
          {"residual", number(e.residual)},
          {"terms", e.terms}, {"truncated", e.truncated}};
}

nlohmann::json to_json(const TheoremBReport& r) {
  nlohmann::json cn = nlohmann::json::array();
  for (auto c : r.cn) cn.push_back(c);
  return {{"depth", r.depth},
          {"truncation", r.truncation},
          {"lower_bound", r.lower_bound},
          {"cn", cn},
          {"language_counts", counts(r.language_counts)},
          {"cn_rates", numbers(r.cn_rates)},
          {"language_rates", numbers(r.language_rates)},
          {"margin", number(r.margin)},
          {"verdict", r.verdict}};
}

nlohmann::json to_json(const GibbsReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"core_words", row.core_words},
                    {"language_words", row.language_words},
                    {"min_core_ratio", number(row.min_core_ratio)},
                    {"max_language_ratio", number(row.max_language_ratio)},
                    {"argmin", format_word(row.argmin)},
                    {"argmax", format_word(row.argmax)}});
  return {{"m", r.m},
          {"entropy", number(r.entropy)},
          {"rows", rows},
          {"lower", number(r.lower)},
          {"upper", number(r.upper)},
          {"lower_trending_to_zero", r.lower_trending_to_zero},
          {"upper_diverging", r.upper_diverging}};
}

nlohmann::json to_json(const PeriodicEntropy& r) {
  nlohmann::json per = nlohmann::json::array(), fixed = nlohmann::json::array();
  for (auto c : r.per) per.push_back(c);
  for (auto c : r.fixed) fixed.push_back(c);
  return {{"per", per}, {"per_rates", numbers(r.per_rates)}, {"fixed", fixed}, {"fixed_rates", numbers(r.fixed_rates)}};
}

nlohmann::json to_json(const EmpiricalMeasure& m) {
  nlohmann::json cyl = nlohmann::json::object();
  for (const auto& [w, v] : m.cylinder) cyl[w.empty() ? std::string("-") : format_word(w)] = number(v);
  nlohmann::json j{{"kind", to_string(m.kind)}, {"depth", m.depth}, {"cylinders", cyl}};
  // occurrences are counted at in-window offsets only; the choice of E_n outside the window is not modeled
  if (m.kind == MeasureKind::word_average) j["offsets"] = "in-window";
  return j;
}

nlohmann::json to_json(const FactorEntropyReport& r) {
  return {{"depth", r.depth},
          {"factor_counts", counts(r.factor_counts)},
          {"boundary_counts", counts(r.boundary_counts)},
          {"factor_rates", numbers(r.factor_rates)},
          {"boundary_rates", numbers(r.boundary_rates)},
          {"margin", number(r.margin)},
          {"verdict", r.verdict}};
}

}  // namespace shiftlab
