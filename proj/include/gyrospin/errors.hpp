#pragma once

#include <stdexcept>
#include <string>

namespace gyrospin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidBasis : Error {
  using Error::Error;
};
struct InvalidParameter : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};

// numeric failures: truncation loss, eigensolver or norm breakdown
struct NumericError : Error {
  using Error::Error;
};
struct TruncationError : NumericError {
  using NumericError::NumericError;
};

// parameter point outside the validity range of a reduced model
struct RegimeError : Error {
  using Error::Error;
};
struct UnsupportedShape : Error {
  using Error::Error;
};

}  // namespace gyrospin
