#pragma once

#include <stdexcept>
#include <string>

namespace hardyspec {

/// Requested tolerance was not reached; carries the achieved estimate.
class AccuracyError : public std::runtime_error {
  public:
    AccuracyError(const std::string& what, double achieved_estimate)
        : std::runtime_error(what + " (achieved " + std::to_string(achieved_estimate) + ")"),
          achieved(achieved_estimate) {}
    double achieved;
};

/// Sampled data does not cover the region an operation needs.
class CoverageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace hardyspec
