#pragma once

#include <stdexcept>
#include <string>

namespace orthoclone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape, symmetry or normalization precondition not met by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Requested size (clone count, qubit count, index) outside the supported range.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

}  // namespace orthoclone
