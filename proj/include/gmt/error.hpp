#pragma once

#include <stdexcept>
#include <string>

namespace gmt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point, set or table does not fit the space or size function it is used with.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative solve stopped before reaching its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A numerical estimator cannot produce a certified result for the requested input.
class EstimatorError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmt
