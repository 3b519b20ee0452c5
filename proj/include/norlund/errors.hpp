#pragma once

#include <stdexcept>
#include <string>

namespace norlund {

// Bad argument shape: order mismatch, index out of range, bad horizon.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain of an operation (log of a
// non-positive constant term, evaluation point outside [0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation produced a non-finite value.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Data violates a declared bound (weights outside [d-, d+], negative
// coefficients, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A hypothesis required by a checking operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Enumeration size guard exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading or writing a file failed; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace norlund
