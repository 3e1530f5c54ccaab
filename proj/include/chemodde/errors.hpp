#pragma once

#include <stdexcept>
#include <string>

namespace chemodde {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model parameters (E outside (0,1), negative delay, malformed uptake).
class ParameterError : public Error {
 public:
  ParameterError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Caller violated a precondition (dimensions, ranges, missing periodicity).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A quantity left its mathematical domain (zero biomass in a ratio, nonpositive growth factor).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, long index)
      : Error(what + " (first offending index " + std::to_string(index) + ")"), index_(index) {}
  explicit DomainError(const std::string& what) : Error(what), index_(0) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// An iteration did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what + " (last residual " + std::to_string(last_residual) + ")"),
        last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chemodde
