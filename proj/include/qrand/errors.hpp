#pragma once

#include <stdexcept>
#include <string>

namespace qrand {

/// Operand shapes do not fit together (non-square input, factorization
/// mismatch, state/map dimension mismatch).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition or postcondition on values was violated
/// (non-Hermitian input, weights that are not a distribution, incomplete POVM).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters outside the range where a formula or guard applies. The message
/// carries the failing condition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or truncated persisted data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrand
