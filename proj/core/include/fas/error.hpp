// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace fas {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Parameters that make a formula singular (e.g. coincident interferer powers
// in a partial-fraction expansion). The message names the alternative path.
class DegenerateParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double partial_value, double est_error, long evaluations)
      : Error(what), partial_value_(partial_value), est_error_(est_error), evaluations_(evaluations) {}

  double partial_value() const noexcept { return partial_value_; }
  double est_error() const noexcept { return est_error_; }
  long evaluations() const noexcept { return evaluations_; }

 private:
  double partial_value_;
  double est_error_;
  long evaluations_;
};

// Covariance factorization or other numerical breakdown.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Requested target is unreachable (or already met without movement).
class InfeasibleTargetError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fas
