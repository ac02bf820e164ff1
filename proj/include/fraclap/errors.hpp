#pragma once

#include <stdexcept>
#include <string>

namespace fraclap {

// Violated precondition on an argument (bad shape, unknown descriptor, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter outside the supported numerical range (s near 0 or 1, |h| > rho0, ...).
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Quadrature or linear solve did not reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fraclap
