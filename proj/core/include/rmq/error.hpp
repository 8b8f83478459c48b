#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmq {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A drift or volatility evaluation produced a non-finite value.
class ModelEvaluationError : public Error {
 public:
  using Error::Error;
};

/// Tridiagonal elimination met a zero (or numerically zero) pivot.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, std::size_t row)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Newton iteration could not produce a valid grid.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iteration, double residual,
                   std::ptrdiff_t level = -1)
      : Error(what), iteration_(iteration), residual_(residual), level_(level) {}

  int iteration() const noexcept { return iteration_; }
  double residual() const noexcept { return residual_; }
  /// Tree level the failure happened at, or -1 outside tree construction.
  std::ptrdiff_t level() const noexcept { return level_; }

 private:
  int iteration_;
  double residual_;
  std::ptrdiff_t level_;
};

/// A serialized document violates the tree schema; path() is a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, std::string path)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace rmq
