#pragma once

#include <stdexcept>
#include <string>

namespace nmrq {

// Error taxonomy maps onto the CLI exit codes: validation-type errors
// (schema, parameter, decomposition) exit 2, resource errors exit 3,
// anything else exits 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DecompositionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nmrq
