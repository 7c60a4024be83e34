#pragma once

#include <complex>

namespace qdeform {

/// The deformation parameter q. Phase deformations are stored by their angle
/// so that |q| = 1 holds without round-off at the boundary.
class Deformation {
 public:
  enum class Kind { Classical, RealQ, PhaseQ };

  /// q = 1.
  static Deformation classical() noexcept;
  /// Real q > 0, q != 1.
  static Deformation real(double q);
  /// q = e^{i theta} with theta in (0, pi).
  static Deformation phase(double theta);

  Kind kind() const noexcept { return kind_; }
  std::complex<double> value() const noexcept;
  /// Only meaningful for PhaseQ.
  double phase_angle() const noexcept { return theta_; }
  /// Only meaningful for RealQ (1 for Classical).
  double real_value() const noexcept { return q_; }

  friend bool operator==(const Deformation&, const Deformation&) = default;

 private:
  Deformation(Kind kind, double q, double theta) noexcept
      : kind_(kind), q_(q), theta_(theta) {}

  Kind kind_;
  double q_;
  double theta_;
};

}  // namespace qdeform
