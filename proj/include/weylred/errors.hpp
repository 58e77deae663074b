#pragma once

#include <stdexcept>
#include <string>

namespace weylred {

// Bad user input: wrong series/rank, malformed datum, nesting violations.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured element cap. Never silent.
struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural fact the theory guarantees failed to verify; indicates a bug
// in this library, not bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace weylred
