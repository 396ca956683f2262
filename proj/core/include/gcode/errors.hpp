#pragma once

#include <stdexcept>
#include <string>

namespace gcode {

// Caller passed arguments outside an operation's contract.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An exhaustive computation exceeded its configured budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A constructed object failed its own certificate check. Always a bug in
// the construction, never a normal outcome.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gcode
