#include "qdeform/error.hpp"

#include <cstdio>

namespace qdeform {

std::string format_value(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RootOfUnity: return "RootOfUnity";
    case ErrorCode::NonRealValue: return "NonRealValue";
    case ErrorCode::PositivityViolation: return "PositivityViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SequenceMismatch: return "SequenceMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NegativeRatio: return "NegativeRatio";
    case ErrorCode::Diverges: return "Diverges";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NonDecayingIntegrand: return "NonDecayingIntegrand";
    case ErrorCode::GridTooShort: return "GridTooShort";
    case ErrorCode::MomentQualityTooLow: return "MomentQualityTooLow";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<int> index) {
  std::string out{to_string(code)};
  if (index) out += " at n=" + std::to_string(*index);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<int> index)
    : std::runtime_error(decorate(code, message, index)), code_(code), index_(index) {}

}  // namespace qdeform
