#pragma once

#include <stdexcept>
#include <string>

namespace qmac {

// Bad inputs: out-of-range parameters, malformed configs, mode-index errors.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerically non-physical state: covariance below the vacuum limit,
// negative probabilities beyond tolerance, inconsistent moments.
class physicality_error : public std::runtime_error {
  public:
    explicit physicality_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Computation would exceed sane resource limits (grid sizes, cutoffs).
class resource_error : public std::runtime_error {
  public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qmac
