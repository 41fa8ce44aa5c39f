#pragma once

#include <stdexcept>
#include <string>

namespace halfbound {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: unknown kinds, missing or out-of-range parameters,
/// violated preconditions. Maps to CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a special function.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Integration, series or matrix product failed to reach its accuracy
/// target. Maps to CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A bracket contains no critical point. Maps to CLI exit code 4.
class NoRootError : public Error {
 public:
  using Error::Error;
};

}  // namespace halfbound
