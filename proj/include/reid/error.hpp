#pragma once

#include <stdexcept>
#include <string>

namespace reid {

// Base for every error thrown by the library. The CLI maps DataError to exit
// code 2 and ProtocolError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data: files, dimensions, vocabularies.
class DataError : public Error {
 public:
  using Error::Error;
};

// Violated preconditions on numeric inputs (dimension mismatch, degenerate
// geometry, invalid parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace reid
