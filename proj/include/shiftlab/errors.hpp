#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

/// Bad user input: malformed system spec, invalid parameters, unreadable files.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A combinatorial search or enumeration hit its configured ceiling.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Floating evaluation could not decide a digit at the working precision.
class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Requested more digits of w(beta) than the shift currently holds.
class DigitCacheTooShort : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

}  // namespace shiftlab
