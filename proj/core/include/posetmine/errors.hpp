#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmine {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate does not name an element of its factor.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

/// A factor has no unique maximum, so its dual has no bottom.
class NotDualizable : public Error {
 public:
  using Error::Error;
};

/// Poset construction rejected its input (cycle, missing bottom, wrong kind).
class InvalidPoset : public Error {
 public:
  using Error::Error;
};

/// Malformed input data. Carries the 1-based row and the column name when known.
class IngestError : public Error {
 public:
  IngestError(const std::string& what, std::size_t row = 0, std::string column = {})
      : Error(format(what, row, column)), row_(row), column_(std::move(column)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t row, const std::string& column) {
    std::string out;
    if (row != 0) out += "row " + std::to_string(row) + ": ";
    if (!column.empty()) out += "column '" + column + "': ";
    return out + what;
  }

  std::size_t row_;
  std::string column_;
};

/// Bad thresholds or options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (level width, recursion depth, space size) was hit.
class ResourceExceeded : public Error {
 public:
  using Error::Error;
};

/// Caller broke an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmine
