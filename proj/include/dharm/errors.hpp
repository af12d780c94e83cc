#pragma once

#include <stdexcept>
#include <string>

namespace dharm {

/// Argument outside the mathematical domain of an operation (negative time,
/// sigma outside (0,1), unknown operator, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or quadrature did not reach its tolerance. Carries the best
/// tolerance that was achieved before giving up.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Caller violated a documented precondition of a check (e.g. the
/// maximum-principle check on a sequence that is not nonnegative).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dharm
