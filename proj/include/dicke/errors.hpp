#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Raised when an argument lies outside an operation's domain (bad qubit
/// count, probability outside [0,1], dimension mismatch, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when an internal consistency check fails. Seeing one of these means
/// a bug in the library, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dicke
