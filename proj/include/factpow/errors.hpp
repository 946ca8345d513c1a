#pragma once

#include <stdexcept>
#include <string>

namespace factpow {

/// A configured limit (factorial guard, scan budget) was reached.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function being evaluated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A result is not representable at the working precision.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Malformed user input (CLI literals, unknown names, bad configuration).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A checked mathematical claim turned out false on a computed instance.
class FalsificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace factpow
