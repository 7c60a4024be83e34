#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include "qdeform/deformation.hpp"

namespace qdeform {

enum class SequenceKind { Linear, ArikCoon, Symmetric, Fibonacci };

std::string_view to_string(SequenceKind kind) noexcept;

/// The spectrum rho_n together with the box function that turns it into
/// [rho_n]_q:
///
///   Linear     n
///   ArikCoon   (1 - q^n) / (1 - q)
///   Symmetric  (q^n - q^{-n}) / (q - q^{-1})
///   Fibonacci  F_n with F_1 = F_2 = 1 (carries no deformation)
///
/// The classical deformation always reduces the deformed kinds to n.
class SpectrumSequence {
 public:
  explicit SpectrumSequence(SequenceKind kind,
                            Deformation deformation = Deformation::classical()) noexcept
      : kind_(kind), deformation_(deformation) {}

  SequenceKind kind() const noexcept { return kind_; }
  const Deformation& deformation() const noexcept { return deformation_; }

  /// Literal complex-arithmetic evaluation of the box function.
  std::complex<double> box_complex(int n) const;

  /// True when every [rho_n]_q is real (the self-conjugacy condition).
  bool self_conjugate() const noexcept;

  /// True when [rho_n]_q = n for every n.
  bool bosonic() const noexcept;

  /// True when n -> [rho_n]_q is nondecreasing for n >= 1; needed for the
  /// geometric tail bound of exp_q.
  bool nondecreasing() const noexcept;

  /// For a phase q = e^{i pi/m} with the Symmetric box, [m]_q = 0 and the
  /// Fock module closes at dimension m. Returns m in that case.
  std::optional<int> closure_order() const noexcept;

  /// Whether [rho_n]_q vanishes (within 1e-12 on the sine numerator for phases).
  bool vanishes(int n) const;

  friend bool operator==(const SpectrumSequence&, const SpectrumSequence&) = default;

 private:
  SequenceKind kind_;
  Deformation deformation_;
};

/// [rho_n]_q as a real number. Throws NonRealValue when the pair
/// (kind, deformation) is not self-conjugate and the value has an imaginary
/// part, and RootOfUnity for a degenerate phase denominator.
double box_value(const SpectrumSequence& sequence, int n);

/// The n-th Fibonacci number, F_0 = 0, F_1 = F_2 = 1.
double fibonacci(int n);

}  // namespace qdeform
