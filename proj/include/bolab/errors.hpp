#pragma once

#include <stdexcept>
#include <string>

namespace bolab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes or grids do not match.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (non-real input, nonzero mean, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration, rejected before any work is done.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Time stepping produced non-finite values.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class UnsupportedScaleError : public Error {
 public:
  using Error::Error;
};

}  // namespace bolab
