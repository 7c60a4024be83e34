#pragma once

#include <complex>

#include "qdeform/sequence.hpp"

namespace qdeform {

/// A truncated series together with its certificate.
struct SeriesValue {
  std::complex<double> value;
  int order = 0;            ///< number of terms summed (n = 0 .. order-1)
  double tail_bound = 0.0;  ///< rigorous bound on |sum of neglected terms|
  bool terminated = false;  ///< the series is a finite polynomial (closed Fock module)
};

inline constexpr int kDefaultMaxOrder = 100000;

/// exp_q(x) = sum_n x^n / [rho_n]_q!.
///
/// Summation stops once [rho_{N+1}]_q >= 2|x| on a nondecreasing sequence,
/// so every later term is at most half its predecessor and the neglected tail
/// is bounded by twice the first neglected term; that bound must fall below
/// `tolerance`. When the sequence closes (phase q = e^{i pi/m}) the series is
/// the exact polynomial of degree m-1.
SeriesValue exp_q_series(const SpectrumSequence& sequence, std::complex<double> x, double tolerance,
                         int max_order = kDefaultMaxOrder);

inline std::complex<double> exp_q(const SpectrumSequence& sequence, std::complex<double> x,
                                  double tolerance) {
  return exp_q_series(sequence, x, tolerance).value;
}

/// 1 / exp_q(x). This is what "exp_q(-t)" denotes in the normalization and
/// overlap formulas; exp_q(x) exp_q(y) != exp_q(x + y), so it is never the
/// series evaluated at -x.
std::complex<double> exp_q_reciprocal(const SpectrumSequence& sequence, std::complex<double> x,
                                      double tolerance);

}  // namespace qdeform
