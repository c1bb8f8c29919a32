#pragma once

#include <stdexcept>
#include <string>

namespace unitarity {

// Invalid family parameters or label assignments.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An argument outside the domain of an operation (zero root, a weight that
// is not a noncompact positive root, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A structural invariant failed. Never expected for valid inputs.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A requested computation exceeds a configured size bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The classifier's closed-form expectation and its certificate search disagree.
class ClassificationInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace unitarity
