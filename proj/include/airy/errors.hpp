#pragma once

#include <stdexcept>
#include <string>

namespace airy {

// Input outside the mathematical domain of an operation (odd k where even is
// required, n < 2, unsupported twist, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap (module rank, composition count) would be exceeded.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Brute-force truncation did not stabilize below the configured ceiling.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two routes that must agree did not. Always an implementation bug.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Incompatible exponent lattices in series arithmetic.
class LatticeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace airy
