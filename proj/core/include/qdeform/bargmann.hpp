#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qdeform/measure.hpp"
#include "qdeform/sequence.hpp"

namespace qdeform {

/// psi(z) = sum_n z^n <n|psi> / sqrt([rho_n]_q!), held as Fock amplitudes.
struct AnalyticSymbol {
  Eigen::VectorXcd amplitudes;
  SpectrumSequence sequence{SequenceKind::Linear};

  std::complex<double> operator()(std::complex<double> z) const;
};

std::complex<double> to_symbol(const Eigen::VectorXcd& amplitudes, const SpectrumSequence& sequence,
                               std::complex<double> z);

/// Every z-plane integral below factors through the angular integral, which
/// leaves the radial moments M_n = int x^n W~(x) dx of the table. A level n
/// then picks up the factor pi M_n / [rho_n]_q!, which is 1 for an exact
/// weight. The moments of all levels in use are checked first and
/// MomentQualityTooLow (index = worst n) is thrown if one is off by more
/// than `tolerance`.

struct MomentFactors {
  Eigen::VectorXd factor;  ///< pi M_n / [rho_n]_q!
  double max_rel_error = 0.0;
};

MomentFactors moment_factors(const WeightTable& weight, const SpectrumSequence& sequence,
                             int n_levels, double tolerance);

struct Reconstruction {
  Eigen::VectorXcd amplitudes;
  double deviation = 0.0;  ///< || reconstructed - input ||
  double moment_error = 0.0;
};

/// |psi> = int d^2z W N psi(conj z) |q,z>.
Reconstruction reconstruct(const Eigen::VectorXcd& amplitudes, const WeightTable& weight,
                           const SpectrumSequence& sequence, double tolerance);

/// int d^2z W(|z|^2) / exp_q(|z|^2) conj(psi1(conj z)) psi2(conj z).
std::complex<double> symbol_inner_product(const Eigen::VectorXcd& psi1, const Eigen::VectorXcd& psi2,
                                          const WeightTable& weight, const SpectrumSequence& sequence,
                                          double tolerance);

/// int d^2z' W / exp_q(|z'|^2) exp_q(conj(z) z') psi(conj z'); equals psi(conj z)
/// for an exact weight.
std::complex<double> kernel_reproduce(const Eigen::VectorXcd& amplitudes, const WeightTable& weight,
                                      const SpectrumSequence& sequence, std::complex<double> z,
                                      double tolerance);

struct OvercompletenessReport {
  std::complex<double> z;
  int n_levels = 0;
  Eigen::VectorXcd expanded;  ///< |q,z'> expanded over the family
  Eigen::VectorXcd direct;    ///< normalized build_state vector
  double deviation = 0.0;
  double moment_error = 0.0;
};

/// Expands |q,z'> = int d^2z W N(|z|^2) N(|z'|^2) exp_q(conj(z) z') |q,z> and
/// compares with the directly built state.
OvercompletenessReport overcompleteness_check(std::complex<double> z_prime, const WeightTable& weight,
                                              const SpectrumSequence& sequence, double tolerance,
                                              double state_tolerance = 1e-12);

}  // namespace qdeform
