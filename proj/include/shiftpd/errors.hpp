#pragma once

#include <stdexcept>
#include <string>

namespace shiftpd {

// Base of everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands disagree on ambient variable count or field.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A documented precondition does not hold (non-UPT input, inhomogeneous input, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A desk-scale guard (term count, matrix entries, variable count) was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftpd
