#pragma once

#include <stdexcept>
#include <string>

namespace tensorank {

/// Base class for all tensorank errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape/order mismatches, invalid mode sets, inconsistent bond dims.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Invalid argument values (ranks out of range, bad tolerances, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Exhaustive-analysis or dense-size caps exceeded.
class CapExceededError : public Error {
public:
  using Error::Error;
};

/// File I/O and format failures; message carries the path.
class IoError : public Error {
public:
  using Error::Error;
};

/// Expression syntax errors with position information.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace tensorank
