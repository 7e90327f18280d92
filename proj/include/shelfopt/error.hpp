#ifndef SHELFOPT_ERROR_HPP
#define SHELFOPT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace shelfopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or type invariant.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// Exhaustive or tabular solver refused an instance that is too large.
class InstanceTooLarge : public Error {
public:
  using Error::Error;
};

/// Minimum bay requirements exceed the available bays.
class Infeasible : public Error {
public:
  Infeasible(const std::string &what, double deficit)
      : Error(what), deficit_(deficit) {}

  /// Bays missing to satisfy every minimum.
  double deficit() const { return deficit_; }

private:
  double deficit_;
};

/// A logarithmic fit produced a negative slope.
class DiminishingReturnsViolation : public Error {
public:
  DiminishingReturnsViolation(const std::string &what, double a, double b)
      : Error(what), a_(a), b_(b) {}

  double intercept() const { return a_; }
  double slope() const { return b_; }

private:
  double a_;
  double b_;
};

/// A solver that relies on concave value functions received a non-concave one.
class ConcavityRequired : public Error {
public:
  using Error::Error;
};

} // namespace shelfopt

#endif
