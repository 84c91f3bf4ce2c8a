#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dibbl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A mathematical operation left its domain. The CLI maps every
/// MathError to exit code 3.
class MathError : public Error {
public:
  using Error::Error;
};

/// Result (or intermediate) is not a finite number, or an exact rational
/// computation overflowed its integer representation.
class RangeError : public MathError {
public:
  using MathError::MathError;
};

class DivisionByZeroError : public MathError {
public:
  DivisionByZeroError() : MathError("division by zero real part") {}
  explicit DivisionByZeroError(const std::string &what) : MathError(what) {}
};

class DomainError : public MathError {
public:
  using MathError::MathError;
};

/// Leading coefficient of a quadratic is zero.
class NotAQuadraticError : public MathError {
public:
  NotAQuadraticError() : MathError("not a quadratic: leading coefficient is zero") {}
};

class CoincidentPointsError : public MathError {
public:
  CoincidentPointsError() : MathError("secant needs two distinct points") {}
};

/// Zero or negative step where a positive (or nonzero) one is required.
class StepError : public MathError {
public:
  using MathError::MathError;
};

/// Expression references a name other than the independent variable.
class UnboundVariableError : public Error {
public:
  explicit UnboundVariableError(const std::string &name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string &name() const noexcept { return name_; }

private:
  std::string name_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string &message)
      : Error("parse error at " + std::to_string(position) + ": " + message),
        position_(position), message_(message) {}

  /// Zero-based character offset; may equal the input length (end of input).
  std::size_t position() const noexcept { return position_; }
  const std::string &message() const noexcept { return message_; }

private:
  std::size_t position_;
  std::string message_;
};

} // namespace dibbl
