#pragma once

#include <stdexcept>
#include <string>

#include "ptrig/numeric_result.hpp"

namespace ptrig {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (or a non-finite evaluation).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument within the pole-guard band of tan_p / sec_p.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Argument beyond the supported range of the hyperbolic inversion.
class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid generalization parameter or theorem hypothesis.
class ParamError : public Error {
 public:
  using Error::Error;
};

/// Missing, superfluous or out-of-cap theorem endpoint.
class EndpointError : public Error {
 public:
  using Error::Error;
};

/// Target value not enclosed by the bracket handed to an inversion.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Iteration or subdivision budget exhausted. Carries the best partial result.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, NumericResult partial)
      : Error(what), partial_(partial) {}

  const NumericResult& partial() const noexcept { return partial_; }

 private:
  NumericResult partial_;
};

}  // namespace ptrig
