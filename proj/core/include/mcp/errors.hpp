#pragma once

#include <stdexcept>
#include <string>

namespace mcp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (parse errors, invariant violations).
struct ValidationError : Error {
  using Error::Error;
};

// A configured work cap was hit; callers may retry with a larger budget
// or fall back to another algorithm.
struct BudgetError : Error {
  using Error::Error;
};

}  // namespace mcp
