#pragma once

#include <stdexcept>
#include <string>

namespace s2al {

/// Malformed input: bad file contents, out-of-range vertex ids, invalid
/// parameter combinations. Maps to CLI exit code 2.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parameters that are syntactically fine but outside the feasible regime
/// (noise rate >= 1/2, diverging budgets, rejection sampling that cannot
/// terminate). Maps to CLI exit code 3.
struct infeasible_error : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace s2al
