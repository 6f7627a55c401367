#pragma once

#include <stdexcept>
#include <string>

namespace jmat {

/// A numerical routine could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Linear system whose condition estimate exceeds the caller's bound.
class SingularSystemError : public NumericalError {
public:
  SingularSystemError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

private:
  double condition_;
};

/// Channel parameters the closed-form kinematics do not cover (Z != 0, l > 0).
class UnsupportedChannelError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace jmat
