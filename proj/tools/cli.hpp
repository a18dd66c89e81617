#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/language.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/systems.hpp"

namespace shiftlab::cli {

struct Globals {
  std::string format = "json";
  std::string out;
  unsigned threads = 1;
  std::size_t max_words = 5'000'000;
  std::string cache_dir;
  std::size_t digits = 64;
  std::size_t gap_cap = 64;

  EnumerationConfig enumeration() const { return {max_words, threads}; }
  SystemOptions system_options() const { return {digits, gap_cap}; }
};

/// A finished command: the report plus whether a budget ran out along the way.
struct Outcome {
  Report report;
  bool budget_exceeded = false;
};

struct VerifyOptions {
  std::vector<std::string> conditions{"I", "II", "III"};
  std::size_t depth = 20;
  std::string mode = "S";
  std::optional<std::size_t> gap;
  std::size_t tuple_size = 3;
  std::size_t spec_length = 6;
  std::size_t m = 3;
  std::size_t tau_max = 8;
  std::size_t tau_length = 10;
  double threshold = 0.05;
};

struct BetaOptions {
  std::string beta;
  std::size_t enumerate = 0;
  bool decompose = false;
  std::vector<std::string> verify;
  VerifyOptions checks;
};

struct SGapOptions {
  std::string set;
  std::string rule;
  std::size_t max = 64;
  bool display = false;
  bool entropy = false;
  double tol = 1e-12;
  std::size_t enumerate = 0;
};

struct CodedOptions {
  std::string generators;
  std::string words;
  std::size_t cn = 0;
  std::size_t enumerate = 0;
  std::size_t truncation = 0;
};

struct MeasureOptions {
  std::string system;
  std::size_t mme_depth = 24;
  std::size_t per = 20;
  std::size_t targets_len = 4;
  bool gibbs = false;
  std::size_t gibbs_n = 8;
};

struct FactorOptions {
  std::string system;
  std::string code;
  bool verify = false;
  std::size_t depth = 8;
};

Outcome run_beta(const Globals& g, const BetaOptions& o);
Outcome run_sgap(const Globals& g, const SGapOptions& o);
Outcome run_coded(const Globals& g, const CodedOptions& o);
Outcome run_verify(const Globals& g, const std::string& system, const VerifyOptions& o);
Outcome run_measure(const Globals& g, const MeasureOptions& o);
Outcome run_factor(const Globals& g, const FactorOptions& o);

const std::vector<std::string>& reproduce_ids();
/// One report per acceptance script; "all" runs every script in order.
std::vector<std::pair<std::string, Outcome>> run_reproduce(const Globals& g, const std::string& id);

/// Counts #L_1..#L_n through the layer cache when a cache directory is configured.
std::vector<Count> counts_for(const Globals& g, const LanguageOracle& language, std::size_t n);

/// Appends the verify checks for `system` to `out`.
void add_verify_checks(const Globals& g, const System& system, const VerifyOptions& o, Outcome& out);

}  // namespace shiftlab::cli
