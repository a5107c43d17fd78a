#include "spinsum/error.hpp"

namespace spinsum {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularPairing: return "SingularPairing";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InconsistentR: return "InconsistentR";
    case ErrorKind::SingularX: return "SingularX";
    case ErrorKind::MismatchedR: return "MismatchedR";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UngradedIndex: return "UngradedIndex";
    case ErrorKind::AxiomPrereqFailed: return "AxiomPrereqFailed";
    case ErrorKind::BoundaryEdge: return "BoundaryEdge";
    case ErrorKind::InvalidCell: return "InvalidCell";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::StateOutOfRange: return "StateOutOfRange";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace spinsum
