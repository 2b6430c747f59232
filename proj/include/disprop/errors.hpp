#pragma once

#include <stdexcept>
#include <string>

namespace disprop {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a function (e.g. a CDF query at 3/2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data. `field()` names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A division refers to agents or pieces that do not exist.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial enumeration would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency assertion failed. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

#define DISPROP_ASSERT(cond, msg)                                            \
  do {                                                                       \
    if (!(cond)) {                                                           \
      throw ::disprop::InternalError(std::string(__FILE__) + ":" +           \
                                     std::to_string(__LINE__) + ": " + msg); \
    }                                                                        \
  } while (0)

}  // namespace disprop
