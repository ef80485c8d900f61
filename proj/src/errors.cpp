// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include "hcrb/errors.hpp"

namespace hcrb {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kCoincidentPoints: return "CoincidentPoints";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInvalidSector: return "InvalidSector";
    case ErrorKind::kSingularCombiner: return "SingularCombiner";
    case ErrorKind::kQuadratureFailure: return "QuadratureFailure";
    case ErrorKind::kDegenerateBias: return "DegenerateBias";
    case ErrorKind::kUnknownScenario: return "UnknownScenario";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kValidationError: return "ValidationError";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace hcrb
