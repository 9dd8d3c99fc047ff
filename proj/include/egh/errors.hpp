#pragma once

#include <stdexcept>
#include <string>

namespace egh {

// Input violates an operation's precondition (exit code 2 at the CLI).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed shapes: non-square matrices, out-of-range indices.
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A size cap was hit (group closure, enumeration budgets).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace egh
