// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_ERRORS_HPP
#define HCRB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcrb {

enum class ErrorKind {
  kCoincidentPoints,
  kIndexOutOfRange,
  kDimensionMismatch,
  kInvalidSector,
  kSingularCombiner,
  kQuadratureFailure,
  kDegenerateBias,
  kUnknownScenario,
  kParseError,
  kValidationError,
  kIoError,
  kInvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; `kind()` distinguishes the cause.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hcrb

#endif  // HCRB_ERRORS_HPP
