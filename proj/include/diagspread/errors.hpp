#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diagspread {

// All library errors derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  DegreeMismatch(std::size_t lhs, std::size_t rhs)
      : Error("degree mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Raised when an enumeration would exceed its configured cap. Results are
// never silently truncated.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string const& what, std::uint64_t cap)
      : Error(what + " exceeds cap of " + std::to_string(cap)) {}
};

class InvalidSubgroup : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// Something that the mathematics guarantees did not happen. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace diagspread
