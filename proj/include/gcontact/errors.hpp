#pragma once

#include <stdexcept>
#include <string>

namespace gcontact {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGenerator : public Error {
 public:
  explicit UnknownGenerator(const std::string& name)
      : Error("unknown generator '" + name + "'") {}
};

class ChartMismatch : public Error {
 public:
  ChartMismatch() : Error("operands live on different charts") {}
};

class InhomogeneousInput : public Error {
 public:
  using Error::Error;
};

class InvalidChart : public Error {
 public:
  using Error::Error;
};

/// The constant-plus-nilpotent solver did not reach a fixed point within its bound.
class NoPolynomialSolution : public Error {
 public:
  using Error::Error;
};

class NotContact : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcontact
