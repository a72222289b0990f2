#pragma once

#include <stdexcept>
#include <string>

namespace actionwave {

/// Raised when an argument falls outside the domain of an operation. The
/// offending parameter is kept so front ends can name it.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string parameter, const std::string& what)
      : std::domain_error(what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// Raised when the time-dependent angular factor exp(C n sin(Et/hbar)) would
/// leave the binary64 exponent range.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(int order, int limit, const std::string& what)
      : std::overflow_error(what), order_(order), limit_(limit) {}

  int order() const noexcept { return order_; }
  // Largest |n| whose angular factor is still representable.
  int limit() const noexcept { return limit_; }

 private:
  int order_;
  int limit_;
};

}  // namespace actionwave
