#pragma once

#include <stdexcept>
#include <string>

namespace vexp {

/// Bad input to an operation: negative level, mismatched domains, malformed data.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function (Lambert W, Λ).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hypothesis required by a condition checker does not hold on the sampled range.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Problem size beyond the configured cap, or an iteration budget exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vexp
