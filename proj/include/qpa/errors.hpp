#pragma once

#include <stdexcept>
#include <string>

namespace qpa {

// Bad input: malformed spec, grid, file or flag.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exponent falls outside the DFT index set K_G, or G is too small/odd.
class GridError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// L or G violate a condition a bound needs (nonpositive g-function base,
// vacuous Neumann series, ...).
class InadmissibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Singular or ill-conditioned linear system.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpa
