#pragma once

#include <stdexcept>
#include <string>

namespace fracckn {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// partial holds the best estimate reached before giving up
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial, double abs_error)
      : std::runtime_error(what), partial_(partial), abs_error_(abs_error) {}
  double partial() const { return partial_; }
  double abs_error() const { return abs_error_; }

 private:
  double partial_;
  double abs_error_;
};

}  // namespace fracckn
