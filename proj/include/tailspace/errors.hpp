#pragma once

#include <stdexcept>
#include <string>

namespace tailspace {

// Invalid argument or malformed input (bad exponent, parity violation, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense representation requested beyond the configured capacity n_max.
class CapacityError : public std::length_error {
 public:
  CapacityError(int n, int n_max);
  int n() const { return n_; }
  int n_max() const { return n_max_; }

 private:
  int n_;
  int n_max_;
};

// Exact integer arithmetic left its 64-bit window.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace tailspace
