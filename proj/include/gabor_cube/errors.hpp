#ifndef GABOR_CUBE_ERRORS_HPP
#define GABOR_CUBE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gabor_cube {

/// Bad arguments: dimension mismatch, non-finite input, empty region.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of budget before reaching the requested tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// A structured set description is inconsistent (bad ranges, overlapping
/// partition, missing child).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input does not satisfy an operation's precondition (e.g. not an ONB).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A structural invariant that holds for every verified input was violated.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedWindow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gabor_cube

#endif  // GABOR_CUBE_ERRORS_HPP
