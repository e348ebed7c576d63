#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace caimdp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Membership tolerance used by every set oracle.
inline constexpr double kMembershipTol = 1e-9;

/// Base class of every error thrown by the library. `category()` is the
/// machine-readable tag the CLI emits on standard error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* category() const noexcept { return "error"; }
};

/// Input does not follow the model/policy file schema.
class ParseError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "parse"; }
};

/// A model, policy or configuration violates one of its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "validation"; }
};

/// A set or objective does not provide the oracle a solver asked for.
class CapabilityError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "capability"; }
};

/// An action lies outside the action set.
class MembershipError : public Error {
 public:
  MembershipError(const std::string& what, long index) : Error(what), index_(index) {}
  const char* category() const noexcept override { return "membership"; }
  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// The model's shape class has no tractable solver.
class UnsupportedClassError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "unsupported_class"; }
};

/// A numerical routine failed (infeasible or unbounded subproblem, pivot cap).
class SolverError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "solver"; }
};

/// An exhaustive routine was asked for more work than its budget allows.
class BudgetError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "budget"; }
};

}  // namespace caimdp
