#include "qdeform/deformation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdeform/error.hpp"

namespace qdeform {

Deformation Deformation::classical() noexcept { return {Kind::Classical, 1.0, 0.0}; }

Deformation Deformation::real(double q) {
  if (!std::isfinite(q) || q <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "real deformation requires q > 0, got " + format_value(q));
  }
  if (q == 1.0) {
    throw Error(ErrorCode::InvalidArgument, "q = 1 is the classical deformation, not RealQ");
  }
  return {Kind::RealQ, q, 0.0};
}

Deformation Deformation::phase(double theta) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= std::numbers::pi) {
    throw Error(ErrorCode::InvalidArgument,
                "phase deformation requires theta in (0, pi), got " + format_value(theta));
  }
  return {Kind::PhaseQ, 1.0, theta};
}

std::complex<double> Deformation::value() const noexcept {
  switch (kind_) {
    case Kind::Classical: return {1.0, 0.0};
    case Kind::RealQ: return {q_, 0.0};
    case Kind::PhaseQ: return std::polar(1.0, theta_);
  }
  return {1.0, 0.0};
}

}  // namespace qdeform
