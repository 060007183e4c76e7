#pragma once

#include <stdexcept>
#include <string>

namespace moran {

/// Invalid input: malformed spec, out-of-range parameters, broken invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The forbidden set removes every infinite word.
class EmptySubshiftError : public ValidationError {
 public:
  EmptySubshiftError() : ValidationError("subshift is empty: forbidden words exclude every infinite sequence") {}
};

/// Zero-mass conditioning or sampling.
class ZeroMassError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An enumeration exceeded its node budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerics did not converge within their iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

}  // namespace moran
