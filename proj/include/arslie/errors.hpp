#pragma once

#include <stdexcept>
#include <string>

namespace arslie {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: wrong shapes, rank-condition failure, points outside a chart.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An integration or root search could not be completed. Carries the time at
// which the failure was detected.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double t) : Error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

// A property that holds by construction was found violated; this is a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace arslie
