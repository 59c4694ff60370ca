#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgdmds {

/// Malformed or invalid input data (bad CSV cells, NaN features, asymmetric matrices).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid solver or harness configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pairwise buffer could not be allocated.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(std::size_t required_bytes)
      : std::runtime_error("cannot allocate packed dissimilarity storage of " +
                           std::to_string(required_bytes) + " bytes"),
        required_bytes_(required_bytes) {}

  std::size_t required_bytes() const noexcept { return required_bytes_; }

 private:
  std::size_t required_bytes_;
};

/// Numerical failure inside a solver (non-finite coordinates, singular system).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by pair_gradient when both endpoints coincide.
class DegeneratePairError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace sgdmds
