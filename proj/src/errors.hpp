#pragma once

#include <stdexcept>
#include <string>

namespace nlbox {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed exact-ring text or data file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Index or magnitude outside the supported range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Division by zero in an exact field.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a configured resource limit (enumeration size).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid input such as a malformed certificate.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlbox
