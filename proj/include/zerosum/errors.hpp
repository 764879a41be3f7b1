#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zerosum {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: shape mismatch, bad modulus, out-of-range index, overflow.
class InputError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public InputError {
 public:
  using InputError::InputError;
};

// Raised by operations that require a sum-full input.
class NotSumFullError : public Error {
 public:
  explicit NotSumFullError(std::size_t index)
      : Error("element " + std::to_string(index) + " is not a sum of two other elements"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// A size or time cap of a brute-force search was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A self-check failed. Always an implementation bug, never an input problem.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace zerosum
