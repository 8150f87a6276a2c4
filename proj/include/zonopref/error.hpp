#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zonopref {

// Numeric values are part of the C ABI (see zonopref.h); append only.
enum class ErrorCode : int {
  Ok = 0,
  Io = 1,
  Parse = 2,
  Schema = 3,
  DuplicateElement = 4,
  UnknownElement = 5,
  NotReflexive = 6,
  NotTransitive = 7,
  InstanceTooLarge = 8,
  ProductTooLarge = 9,
  NotIntervalOrder = 10,
  NoDecompositionWithinBound = 11,
  MissingCoordinates = 12,
  DimensionMismatch = 13,
  NegativeBasisComponent = 14,
  NotTwoDimensional = 15,
  EpsTooLarge = 16,
  ArityMismatch = 17,
  UnknownAlternative = 18,
  InvalidArgument = 19,
  Internal = 20,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::string> witness = {})
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  // Identifiers that demonstrate the violation, e.g. the (a, b, c) of a
  // failed transitivity check. Empty when the error has no witness.
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::string> witness_;
};

}  // namespace zonopref
