#pragma once

#include <stdexcept>
#include <string>

namespace rectlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different dimensions or on different grids.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A rectangle or Rademacher index is finer than the grid can represent.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Exponent cap or cell cap exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input document does not match the expected JSON layout.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Fixed-width numerator arithmetic would overflow.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace rectlab
