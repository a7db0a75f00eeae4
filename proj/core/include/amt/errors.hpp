#pragma once

#include <stdexcept>
#include <string>

namespace amt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or a violated precondition (out-of-range m, alpha >= lambda_1, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive procedure gave up. Carries the last estimate it had.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double partial_estimate, double last_residual);

  double partial_estimate() const noexcept { return partial_; }
  double last_residual() const noexcept { return residual_; }

 private:
  double partial_;
  double residual_;
};

/// Pivot below threshold in a dense solve.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A hard internal consistency check failed (two independent routes disagree).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A report could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace amt
