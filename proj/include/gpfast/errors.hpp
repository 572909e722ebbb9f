#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpfast {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Cholesky pivot, Durbin reflection coefficient or eigenvalue showed the
/// matrix is not positive definite. `index` is the failing leading-minor
/// index (0-based) or recursion step.
class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(std::size_t index, const std::string& where = "matrix")
      : Error(where + " is not positive definite (failure at index " + std::to_string(index) + ")"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(std::size_t pivot)
      : Error("matrix is numerically singular (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}

  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)) {}
};

class NotEvenlySpaced : public Error {
 public:
  NotEvenlySpaced() : Error("time grid is not evenly spaced") {}
};

/// The sampler was handed a state it cannot move from, e.g. zero likelihood.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class NonFiniteLikelihood : public Error {
 public:
  explicit NonFiniteLikelihood(double value)
      : Error("log-likelihood returned a non-finite value (" + std::to_string(value) + ")") {}
};

class ShrinkLimitExceeded : public Error {
 public:
  explicit ShrinkLimitExceeded(std::size_t limit)
      : Error("elliptical slice bracket shrunk " + std::to_string(limit) +
              " times without acceptance; the log-likelihood is likely broken") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpfast
