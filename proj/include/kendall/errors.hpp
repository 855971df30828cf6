#pragma once

#include <stdexcept>
#include <string>

namespace kendall {

// Quadrature or root search stopped before reaching the requested tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double achieved_tolerance)
      : std::runtime_error(what), achieved_(achieved_tolerance) {}

  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// The callable handed to invert_to_cdf does not behave like a Williamson
// transform (recovered value escapes [0,1] beyond tolerance).
class InversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tail regime could not be decided from metadata or the numeric probe.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kendall
