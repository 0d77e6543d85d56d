#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paramp {

// Caller broke a documented precondition (non-symmetric input, negative time, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters outside the resonant, below-threshold regime the model covers.
// The message names the violated inequality.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested problem size exceeds a configured cap.
class ResourceLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Fock-space truncation would drop amplitude.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, std::size_t matrix_size)
      : std::runtime_error(what + " (matrix size " + std::to_string(matrix_size) + ")"),
        matrix_size_(matrix_size) {}

  std::size_t matrix_size() const noexcept { return matrix_size_; }

 private:
  std::size_t matrix_size_;
};

}  // namespace paramp
