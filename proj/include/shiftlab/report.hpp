#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "shiftlab/coded_system.hpp"
#include "shiftlab/decomposition.hpp"
#include "shiftlab/factor.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/sgap_shift.hpp"

namespace shiftlab {

enum class ReportFormat { json, csv, tsv };

ReportFormat parse_report_format(const std::string& text);

struct CheckRecord {
  std::string name;
  std::size_t depth = 0;
  nlohmann::json values;
  std::string verdict;  ///< pass, fail, evidence or inconclusive
};

class Report {
public:
  static constexpr const char* schema = "shiftlab.report/1";

  Report(std::string system, std::string fingerprint);

  /// Throws std::invalid_argument for a verdict outside the four allowed values.
  void add(CheckRecord record);
  const std::vector<CheckRecord>& checks() const noexcept { return checks_; }
  bool any_failed() const noexcept;

  nlohmann::json to_json() const;
  /// One row per check: check, depth, verdict, values (compact JSON).
  std::string to_delimited(char separator) const;
  std::string render(ReportFormat format) const;
  /// Writes to a temporary file next to `file` and renames it into place.
  void write(const std::filesystem::path& file, ReportFormat format) const;

private:
  std::string system_;
  std::string fingerprint_;
  std::vector<CheckRecord> checks_;
};

void write_atomically(const std::filesystem::path& file, const std::string& contents);

/// Finite doubles as numbers, infinities as the strings "inf" / "-inf".
nlohmann::json number(double x);
nlohmann::json numbers(const std::vector<double>& xs);
nlohmann::json counts(const std::vector<Count>& xs);
nlohmann::json words(const std::vector<Word>& ws);

nlohmann::json to_json(const GrowthEstimate& g);
nlohmann::json to_json(const SpecificationReport& r);
nlohmann::json to_json(const ConditionIIReport& r);
nlohmann::json to_json(const ConditionIIIReport& r);
nlohmann::json to_json(const DichotomyReport& r);
nlohmann::json to_json(const SGapEntropy& e);
nlohmann::json to_json(const TheoremBReport& r);
nlohmann::json to_json(const GibbsReport& r);
nlohmann::json to_json(const PeriodicEntropy& r);
nlohmann::json to_json(const EmpiricalMeasure& m);
nlohmann::json to_json(const FactorEntropyReport& r);

}  // namespace shiftlab
