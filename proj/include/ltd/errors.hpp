#pragma once

#include <stdexcept>

namespace ltd {

// Bad user input (maps to CLI exit code 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed file contents.
struct ParseError : InputError {
  using InputError::InputError;
};

// More neighbours than the configured cap.
struct CapacityError : InputError {
  using InputError::InputError;
};

// Structurally valid input on which no work can be done, e.g. a serving
// region with no covered cell (maps to CLI exit code 3).
struct DegenerateScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ltd
