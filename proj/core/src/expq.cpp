#include "qdeform/expq.hpp"

#include <cmath>
#include <string>

#include "qdeform/error.hpp"
#include "qdeform/factorial.hpp"

namespace qdeform {

SeriesValue exp_q_series(const SpectrumSequence& sequence, std::complex<double> x, double tolerance,
                         int max_order) {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  SeriesValue out;
  if (const auto m = sequence.closure_order()) {
    require_positive(sequence, *m - 1);
    std::complex<double> term{1.0, 0.0};
    std::complex<double> sum{0.0, 0.0};
    for (int n = 0; n < *m; ++n) {
      if (n > 0) term *= x / box_value(sequence, n);
      sum += term;
    }
    out.value = sum;
    out.order = *m;
    out.tail_bound = 0.0;
    out.terminated = true;
    return out;
  }

  const double ax = std::abs(x);
  const bool monotone = sequence.nondecreasing();
  std::complex<double> term{1.0, 0.0};
  std::complex<double> sum{0.0, 0.0};
  for (int n = 0;; ++n) {
    if (n > max_order) {
      throw Error(ErrorCode::NoConvergence,
                  "tail bound not reached within max order " + std::to_string(max_order), n);
    }
    const double next_box = box_value(sequence, n + 1);
    if (sequence.vanishes(n + 1) || !(next_box > 0.0)) {
      throw Error(ErrorCode::PositivityViolation,
                  "box value " + format_value(next_box) + " is not strictly positive", n + 1);
    }
    if (monotone && next_box >= 2.0 * ax) {
      const double bound = 2.0 * std::abs(term);
      if (bound < tolerance) {
        out.value = sum;
        out.order = n;
        out.tail_bound = bound;
        return out;
      }
    }
    sum += term;
    term *= x / next_box;
  }
}

std::complex<double> exp_q_reciprocal(const SpectrumSequence& sequence, std::complex<double> x,
                                      double tolerance) {
  const auto v = exp_q(sequence, x, tolerance);
  if (std::abs(v) < tolerance) {
    throw Error(ErrorCode::DivisionByZero, "exp_q(x) vanishes at the requested tolerance");
  }
  return 1.0 / v;
}

}  // namespace qdeform
