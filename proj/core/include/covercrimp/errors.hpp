#pragma once

#include <stdexcept>
#include <string>

namespace covercrimp {

// Error taxonomy. The CLI maps these to process exit codes:
// SchemaError -> 2, PrecisionExhausted -> 3, BudgetExceeded -> 4,
// DomainError (and subclasses) -> 5.

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Mixing scalars from different fields, or using an operation over a field
// it does not support.
struct FieldMismatch : DomainError {
  explicit FieldMismatch(const std::string& what) : DomainError(what) {}
};

// An answer would require knowing coefficients at or beyond the working
// truncation order.
struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration would visit more candidates than the configured budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad JSON shape, bad series/permutation literals, value
// constraints violated at the boundary.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace covercrimp
