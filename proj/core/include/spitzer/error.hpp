#pragma once

#include <stdexcept>
#include <string>

namespace spitzer {

// Base of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A numerical procedure could not deliver a result at the requested accuracy
// (root-count mismatch, quadrature non-convergence, no admissible radius).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace spitzer
