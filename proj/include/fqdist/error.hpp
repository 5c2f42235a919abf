#pragma once

#include <stdexcept>
#include <string>

namespace fqdist {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid construction parameters (non-prime p, even characteristic, ...).
struct construction_error : error {
  using error::error;
};

// Field arithmetic violations (division by zero, mixed specs).
struct arithmetic_error : error {
  using error::error;
};

// A configured resource bound was exceeded; the message names the bound.
struct cap_error : error {
  using error::error;
};

// Caller violated an operation precondition.
struct usage_error : error {
  using error::error;
};

// An internal consistency check failed (indicates a bug, not bad input).
struct internal_error : error {
  using error::error;
};

}  // namespace fqdist
