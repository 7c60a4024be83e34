#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdeform {

enum class ErrorCode {
  InvalidArgument,
  RootOfUnity,
  NonRealValue,
  PositivityViolation,
  NoConvergence,
  DivisionByZero,
  DimensionMismatch,
  SequenceMismatch,
  NotInvertible,
  NegativeRatio,
  Diverges,
  Unsupported,
  QuadratureFailure,
  NonDecayingIntegrand,
  GridTooShort,
  MomentQualityTooLow,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Compact rendering of a number for error messages (%.6g).
std::string format_value(double value);

/// Every failure raised by the library. `index()` carries the offending
/// Fock level or series order when one exists (e.g. the n at which the
/// positivity gate tripped).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<int> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<int> index_;
};

}  // namespace qdeform
