#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qzeros/precision.hpp"

namespace qzeros {

/// A parameter lies outside the domain where an operation is defined.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method did not converge. Carries the best iterates reached.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<Complex> best = {})
      : std::runtime_error(what), best_(std::move(best)) {}
  [[nodiscard]] const std::vector<Complex>& best_iterates() const { return best_; }

 private:
  std::vector<Complex> best_;
};

/// A numerical guard (Rouche sampling, truncation stability) did not hold.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent realness checks disagree; usually precision exhaustion.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A combinatorial enumeration would exceed its configured budget.
class CostGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qzeros
