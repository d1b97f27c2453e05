#ifndef LOGCONCAVE_ERRORS_HPP
#define LOGCONCAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace logconcave {

// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A PMF violated a type invariant (negative weight, zero mass, bad JSON, ...).
// The message names the invariant that failed.
class InvalidPmfError : public Error {
 public:
  using Error::Error;
};

// integer_mean_check called on a PMF whose mean is not within tolerance of
// an integer.
class MeanNotIntegerError : public Error {
 public:
  using Error::Error;
};

// Requested support (or convolution result) exceeds the configured budget.
class SupportTooLargeError : public Error {
 public:
  using Error::Error;
};

// solve_p_for_mean target outside the open interval (m, n).
class TargetOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// tail_bracket called on a family that is not {1,...,n} with p = n^(1/n).
class FamilyMismatchError : public Error {
 public:
  using Error::Error;
};

// discretize_density sampled a non-positive density value.
class NonPositiveDensityError : public Error {
 public:
  using Error::Error;
};

// Scalar curve evaluated outside its domain (x <= 0, or x = 1 where the
// function is defined only by limit).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A mathematical assertion of the example battery failed. Reserved for
// genuine inequality violations, never for IO problems.
class CheckFailedError : public Error {
 public:
  using Error::Error;
};

}  // namespace logconcave

#endif  // LOGCONCAVE_ERRORS_HPP
