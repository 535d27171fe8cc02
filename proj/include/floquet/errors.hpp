#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

// Base for every library error. ValidationError maps to CLI exit code 2,
// everything else derived from Error to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A channel wavenumber is exactly zero; the fitting system is singular there.
class ThresholdDegeneracy : public Error {
 public:
  ThresholdDegeneracy(const std::string& what, double suggested_shift)
      : Error(what), suggested_shift_(suggested_shift) {}
  double suggested_shift() const { return suggested_shift_; }

 private:
  double suggested_shift_;
};

class EvanescentOverflow : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace floquet
