#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace volterra {

// Base for every failure the library reports. Callers that only care about
// "did the computation work" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative method stopped without meeting its tolerance. `estimate` is
// the last value it produced.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

// Quadrature could not reach its error target; carries the achieved value
// and the error estimate at that point.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double value, double error_estimate)
      : Error(what), value_(value), error_estimate_(error_estimate) {}
  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

// Alternating closed form lost too many digits to cancellation.
class NumericalInstability : public Error {
 public:
  using Error::Error;
};

// Zero search ran out of horizon before finding the requested count.
class SearchHorizonError : public Error {
 public:
  SearchHorizonError(const std::string& what, std::vector<double> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<double>& partial() const noexcept { return partial_; }

 private:
  std::vector<double> partial_;
};

}  // namespace volterra
