#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace ridgelab {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or specification (bad width, unsupported dimension, ...).
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not reach its declared accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or incompatible serialized data.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

using WarningHandler = std::function<void(const std::string&)>;

/// Emit a warning through the installed handler (stderr by default).
void warn(const std::string& message);

/// Replace the warning handler; returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);

/// Number of warnings emitted since process start.
std::size_t warning_count();

}  // namespace ridgelab
