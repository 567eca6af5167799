#pragma once

#include <stdexcept>
#include <string>

namespace hwkit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument violated a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exact series algebra could not be carried out over the rationals
// (mismatched surds, non-invertible series, irrational square root).
class SeriesError : public Error {
 public:
  using Error::Error;
};

// A text or JSON input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An iterative method (root finder, minimizer, quadrature) did not reach its
// tolerance. Carries the last iterate and the residual it achieved.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_iterate, double residual)
      : Error(what), last_iterate_(last_iterate), residual_(residual) {}

  double last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  double last_iterate_;
  double residual_;
};

}  // namespace hwkit
