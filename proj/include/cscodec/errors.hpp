#pragma once

#include <stdexcept>
#include <string>

namespace cs {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonPowerOfTwoLength : DimensionError {
  using DimensionError::DimensionError;
};
struct EmptyInput : DimensionError {
  using DimensionError::DimensionError;
};
struct DimensionNotDivisible : DimensionError {
  using DimensionError::DimensionError;
};
struct LengthMismatch : DimensionError {
  using DimensionError::DimensionError;
};
struct InvalidDimensions : DimensionError {
  using DimensionError::DimensionError;
};
struct IndexOutOfRange : DimensionError {
  using DimensionError::DimensionError;
};
struct RectOutOfBounds : DimensionError {
  using DimensionError::DimensionError;
};
struct CapacityExceeded : DimensionError {
  using DimensionError::DimensionError;
};
struct EmptyRegion : DimensionError {
  using DimensionError::DimensionError;
};
struct EmptyZone : DimensionError {
  using DimensionError::DimensionError;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedKeyFile : FormatError {
  using FormatError::FormatError;
};
struct UnsupportedVersion : FormatError {
  using FormatError::FormatError;
};
struct MalformedPayload : FormatError {
  using FormatError::FormatError;
};

struct NonFiniteEncountered : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cs
