#pragma once

#include <stdexcept>
#include <string>

namespace fps {

// Error taxonomy, mirrored by CLI exit codes: usage -> 1, input -> 2, evaluation -> 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad invocation: unknown flags, missing arguments, malformed flag values.
struct UsageError : Error {
  using Error::Error;
};

// Bad payload: unreadable files, malformed records, unparsable literals or expressions.
struct InputError : Error {
  using Error::Error;
};

// Domain violations discovered while evaluating: mismatched fields or index spaces,
// star of a series with nonzero constant term, division by zero, invalid horizons.
struct EvalError : Error {
  using Error::Error;
};

}  // namespace fps
