#pragma once

#include <stdexcept>
#include <string>

namespace gaugepack {

// Base class for all library failures.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (bad shape, domain, range).
struct invalid_argument_error : error {
  using error::error;
};

// The requested operation is not defined for this channel class / regime.
struct unsupported_error : error {
  using error::error;
};

// A sampling or escalation budget was exhausted before the result resolved.
struct budget_error : error {
  using error::error;
};

// Internal numeric contract broke (non-convergent quadrature, failed
// positive-definiteness repair, lower bound exceeding a certified upper bound).
struct numeric_error : error {
  using error::error;
};

inline void check_arg(bool ok, const std::string& msg) {
  if (!ok) throw invalid_argument_error(msg);
}

}  // namespace gaugepack
