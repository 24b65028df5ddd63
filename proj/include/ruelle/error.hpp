#pragma once

#include <stdexcept>
#include <string>

namespace ruelle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cylinder basis would exceed the configured basis-size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A depth precondition failed (lifting downwards, integrating past the
/// measure depth, a transfer matrix built too shallow, ...).
class DepthError : public Error {
 public:
  using Error::Error;
};

/// An algebra term does not fit the working depth of its context.
class DepthBudgetExceeded : public DepthError {
 public:
  using DepthError::DepthError;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value required to be strictly positive was not.
class PositivityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative solver stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), residual_(last_residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed or inconsistent run configuration or input document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ruelle
