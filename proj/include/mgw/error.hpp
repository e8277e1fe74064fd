#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mgw {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or violated precondition. The CLI maps these to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public UsageError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : UsageError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A computation could not be completed: budget exhausted, Unknown verdict,
// limit not stabilized. The CLI maps these to exit code 1.
class ComputeError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgw
