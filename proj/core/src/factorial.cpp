#include "qdeform/factorial.hpp"

#include <cmath>
#include <string>

#include "qdeform/error.hpp"

namespace qdeform {

namespace {

double gated_box(const SpectrumSequence& sequence, int n) {
  const double b = box_value(sequence, n);
  if (sequence.vanishes(n) || !(b > 0.0)) {
    throw Error(ErrorCode::PositivityViolation,
                "box value " + format_value(b) + " is not strictly positive", n);
  }
  return b;
}

}  // namespace

void require_positive(const SpectrumSequence& sequence, int n_last) {
  for (int n = 1; n <= n_last; ++n) gated_box(sequence, n);
}

QFactorialTable q_factorial(const SpectrumSequence& sequence, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be non-negative", n_max);
  QFactorialTable table;
  table.n_max = n_max;
  table.values.resize(static_cast<std::size_t>(n_max) + 1);
  table.log_values.resize(static_cast<std::size_t>(n_max) + 1);
  table.values[0] = 1.0;
  table.log_values[0] = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double b = gated_box(sequence, n);
    const auto i = static_cast<std::size_t>(n);
    table.values[i] = b * table.values[i - 1];
    table.log_values[i] = table.log_values[i - 1] + std::log(b);
  }
  return table;
}

}  // namespace qdeform
