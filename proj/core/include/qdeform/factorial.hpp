#pragma once

#include <vector>

#include "qdeform/sequence.hpp"

namespace qdeform {

/// [rho_n]_q! for n = 0..n_max, kept in both the linear and the log domain.
struct QFactorialTable {
  int n_max = 0;
  std::vector<double> values;      ///< values[n] = [rho_n]_q!, values[0] = 1
  std::vector<double> log_values;  ///< log(values[n])
};

/// Builds the factorial table by running products. Enforces the positivity
/// gate: throws PositivityViolation naming the first n <= n_max whose box is
/// zero or negative.
QFactorialTable q_factorial(const SpectrumSequence& sequence, int n_max);

/// The gate on its own: throws PositivityViolation unless
/// [rho_n]_q > 0 for all 1 <= n <= n_last.
void require_positive(const SpectrumSequence& sequence, int n_last);

}  // namespace qdeform
