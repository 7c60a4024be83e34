#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qdeform/fock.hpp"
#include "qdeform/sequence.hpp"

namespace qdeform {

/// |q,z> = N(|z|^2) sum_n z^n / sqrt([rho_n]_q!) |n>, truncated to the levels
/// |0> .. |n_max - 1>.
struct CoherentState {
  std::complex<double> z;
  SpectrumSequence sequence{SequenceKind::Linear};
  int n_max = 0;
  Eigen::VectorXcd coeffs;  ///< z^n / sqrt([rho_n]_q!), coeffs[0] = 1 (unnormalized)
  double norm_const = 1.0;  ///< exp_q(|z|^2)^{-1/2}
  double tail_bound = 0.0;  ///< bound on the l2 norm of the neglected normalized tail
  double tolerance = 0.0;
  bool exact = false;       ///< the module closes; no tail exists

  Eigen::VectorXcd normalized() const { return norm_const * coeffs; }
};

/// Picks n_max so that tail_bound < tolerance. The tail of the squared
/// amplitudes is a tail of exp_q(|z|^2), bounded by twice its first term
/// once [rho_{N+1}]_q >= 2|z|^2.
CoherentState build_state(const SpectrumSequence& sequence, std::complex<double> z,
                          double tolerance);

/// ||a v - z v|| / ||v|| over rows 0 .. ops.n_max - 2, with v zero-padded
/// to the operator dimension.
double eigen_residual(const CoherentState& state, const FockOperatorSet& ops);

/// <q,z|q,z'> = N(|z|^2) N(|z'|^2) exp_q(conj(z) z').
std::complex<double> overlap(const CoherentState& s1, const CoherentState& s2);

struct ContinuityGap {
  double lhs = 0.0;    ///< || |q,z> - |q,z'> ||^2 from the stored vectors
  double rhs = 0.0;    ///< 2 (1 - Re <q,z|q,z'>)
  double bound = 0.0;  ///< admissible |lhs - rhs| from the two tails plus rounding
};

ContinuityGap continuity_gap(const CoherentState& s1, const CoherentState& s2);

}  // namespace qdeform
