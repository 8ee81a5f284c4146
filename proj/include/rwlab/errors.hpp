// errors.hpp - exception types shared by every rwlab module.
#pragma once

#include <stdexcept>
#include <string>

namespace rwlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid size or family parameter.
struct ParameterError : Error {
  using Error::Error;
};

/// Input outside an operation's domain (non-simple graph, weighted graph, ...).
struct UnsupportedInput : Error {
  using Error::Error;
};

struct OutOfRange : Error {
  using Error::Error;
};

struct NoPathError : Error {
  using Error::Error;
};

/// Linear system singular, chain reducible, eigensolver failure.
struct NumericError : Error {
  using Error::Error;
};

/// Dense caps (exact cover n <= 13, solves n <= 5000, enumeration n <= 22).
struct SizeError : Error {
  using Error::Error;
};

struct TimeoutError : Error {
  using Error::Error;
};

struct FlowValidationError : Error {
  using Error::Error;
};

struct RejectionFailure : Error {
  RejectionFailure(const std::string& what, double rate)
      : Error(what), acceptance_rate(rate) {}
  double acceptance_rate;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace rwlab
