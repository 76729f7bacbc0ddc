#pragma once

#include <stdexcept>
#include <string>

namespace modvar {

// Malformed files, invalid specs, out-of-range arguments. CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter value that cannot be specialized (declared excluded or a pole).
class SpecializationError : public InputError {
 public:
  using InputError::InputError;
};

// A computation refused because it would exceed a configured size budget.
// CLI exit code 3.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal cross-check between two independent routes disagreed.
// CLI exit code 1.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modvar
