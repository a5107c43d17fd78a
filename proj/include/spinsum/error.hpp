#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinsum {

enum class ErrorKind {
  SingularPairing,
  NonFinite,
  DimensionMismatch,
  InconsistentR,
  SingularX,
  MismatchedR,
  ShapeMismatch,
  UngradedIndex,
  AxiomPrereqFailed,
  BoundaryEdge,
  InvalidCell,
  LengthMismatch,
  StateOutOfRange,
  ArityMismatch,
  NotSymmetric,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spinsum
