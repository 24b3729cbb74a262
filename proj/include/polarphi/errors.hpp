#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarphi {

// Argument outside the mathematical domain of a function (x <= 0 for lnΓ, p < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed body/profile document. `where` is a byte offset for syntax errors
// or a JSON pointer ("/left/dim") for semantic ones.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string where)
      : std::runtime_error(what + " at " + where), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative numerics (adaptive quadrature, rejection sampling) gave up.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class EnvelopeError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// A proved inequality or asserted invariant failed numerically.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polarphi
