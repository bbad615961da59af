#pragma once

#include <stdexcept>
#include <string>

namespace agsparse {

// Invalid parameter value (outside its mathematical domain).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mismatched vector/matrix shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Runtime numerical failure: divergence, overflow, non-convergence.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace agsparse
