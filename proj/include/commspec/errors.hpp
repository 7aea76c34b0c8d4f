#ifndef COMMSPEC_ERRORS_HPP
#define COMMSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace commspec {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of different matrix order (or vector length).
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Zero matrix, zero eigenvalue, or an ambiguous numerical rank.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Iterative kernel ran out of sweeps. Carries the last residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed matrix file or report.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace commspec

#endif  // COMMSPEC_ERRORS_HPP
