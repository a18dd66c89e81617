#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "shiftlab/beta_shift.hpp"
#include "shiftlab/coded_system.hpp"
#include "shiftlab/decomposition.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/sgap_shift.hpp"

namespace shiftlab {

struct SystemOptions {
  std::size_t digits = 64;  ///< w(beta) digits
  std::size_t gap_cap = 64; ///< cap for infinite gap rules when the system string has none
};

/// A named shift with its language, decomposition and, when known, exact entropy.
struct System {
  std::string spec;
  LanguageOracle language;
  std::optional<Decomposition> decomposition;
  std::optional<double> exact_entropy;
  std::shared_ptr<const BetaShift> beta;
  std::shared_ptr<const SGapShift> sgap;
  std::shared_ptr<const CodedSystem> coded;
};

/// Builds a system from a spec string:
///   beta:<golden | 1.8 | 3/2 | root(x^3-x-1, near=1.32)>
///   sgap:<1,2>[:display]   sgap:pow2[:<cap>]   sgap:all[:<cap>]
///   coded:<generator file>  coded-words:<0,100>
///   full:<p>                orbit:<word>
/// Throws ConfigError on anything else.
System make_system(const std::string& spec, const SystemOptions& options = {});

}  // namespace shiftlab
