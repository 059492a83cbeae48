#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orca {

// Base class of every error thrown by the library. Callers that only care
// about "something went wrong in orca" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Jacobi parameters outside alpha, beta > -1, or other invalid configuration.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

// A point lies outside [-1, 1] by more than the clamping slack.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)),
        expected_(expected),
        got_(got) {}
  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

class SingleClassData : public Error {
 public:
  SingleClassData() : Error("training data must contain both labels -1 and +1") {}
};

// Dense design matrix would exceed the configured element cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// All-zero signed duals: the RKHS component has zero norm and OKC indices are undefined.
class DegenerateModel : public Error {
 public:
  DegenerateModel() : Error("degenerate model: RKHS component has zero norm") {}
};

class NotTwoDimensional : public Error {
 public:
  explicit NotTwoDimensional(std::size_t d)
      : Error("boundary export needs a d = 2 model, got d = " + std::to_string(d)) {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public IoError {
 public:
  explicit FileNotFound(const std::string& path) : IoError("file not found: " + path) {}
};

class MalformedRow : public IoError {
 public:
  MalformedRow(std::size_t row, const std::string& why)
      : IoError("malformed row " + std::to_string(row) + ": " + why), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace orca
