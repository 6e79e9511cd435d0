#pragma once

#include <stdexcept>
#include <string>

namespace xiscope {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole or at a point deliberately excluded from a formula.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Work bound exceeded (e.g. a series needing too many terms).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Working precision too low for the requested evaluation.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, int required_digits)
      : Error(what), required_digits_(required_digits) {}
  int required_digits() const { return required_digits_; }

 private:
  int required_digits_;
};

/// Quadrature or root refinement failed to reach its target.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace xiscope
