#ifndef COLLATZ_ERRORS_HPP
#define COLLATZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace collatz {

/// Argument outside the domain of a map (e.g. T(0), an even input to the odd map).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition on an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested work exceeds the configured memory/time budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace collatz

#endif  // COLLATZ_ERRORS_HPP
