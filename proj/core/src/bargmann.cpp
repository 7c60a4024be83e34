#include "qdeform/bargmann.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdeform/coherent.hpp"
#include "qdeform/error.hpp"
#include "qdeform/factorial.hpp"

namespace qdeform {

namespace {

Eigen::VectorXd inverse_sqrt_factorials(const SpectrumSequence& sequence, int n_levels) {
  const auto table = q_factorial(sequence, std::max(n_levels - 1, 0));
  Eigen::VectorXd out(n_levels);
  for (int n = 0; n < n_levels; ++n) out[n] = 1.0 / std::sqrt(table.values[static_cast<std::size_t>(n)]);
  return out;
}

int occupied_levels(const Eigen::VectorXcd& amplitudes) {
  for (Eigen::Index n = amplitudes.size(); n > 0; --n) {
    if (amplitudes[n - 1] != std::complex<double>{}) return static_cast<int>(n);
  }
  return 1;
}

}  // namespace

std::complex<double> to_symbol(const Eigen::VectorXcd& amplitudes, const SpectrumSequence& sequence,
                               std::complex<double> z) {
  const int n = static_cast<int>(amplitudes.size());
  if (n == 0) return {};
  const auto inv = inverse_sqrt_factorials(sequence, n);
  std::complex<double> sum{};
  for (int k = n - 1; k >= 0; --k) sum = sum * z + amplitudes[k] * inv[k];
  return sum;
}

std::complex<double> AnalyticSymbol::operator()(std::complex<double> z) const {
  return to_symbol(amplitudes, sequence, z);
}

MomentFactors moment_factors(const WeightTable& weight, const SpectrumSequence& sequence,
                             int n_levels, double tolerance) {
  if (!(weight.sequence == sequence)) {
    throw Error(ErrorCode::SequenceMismatch, "weight table was built for a different sequence");
  }
  if (n_levels < 1) throw Error(ErrorCode::InvalidArgument, "need at least one level", n_levels);
  const auto report = verify_moments(weight, n_levels - 1);
  MomentFactors out;
  out.factor.resize(n_levels);
  int worst = 0;
  for (const auto& e : report.entries) {
    out.factor[e.n] = e.achieved / e.target;
    if (e.rel_error > out.max_rel_error) {
      out.max_rel_error = e.rel_error;
      worst = e.n;
    }
  }
  if (!(out.max_rel_error <= tolerance)) {
    throw Error(ErrorCode::MomentQualityTooLow,
                "moment relative error " + format_value(out.max_rel_error) + " exceeds tolerance " +
                    format_value(tolerance),
                worst);
  }
  return out;
}

Reconstruction reconstruct(const Eigen::VectorXcd& amplitudes, const WeightTable& weight,
                           const SpectrumSequence& sequence, double tolerance) {
  if (amplitudes.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty amplitude vector");
  const auto m = moment_factors(weight, sequence, occupied_levels(amplitudes), tolerance);
  Reconstruction out;
  out.amplitudes = amplitudes;
  for (Eigen::Index n = 0; n < m.factor.size(); ++n) out.amplitudes[n] *= m.factor[n];
  out.deviation = (out.amplitudes - amplitudes).norm();
  out.moment_error = m.max_rel_error;
  return out;
}

std::complex<double> symbol_inner_product(const Eigen::VectorXcd& psi1, const Eigen::VectorXcd& psi2,
                                          const WeightTable& weight, const SpectrumSequence& sequence,
                                          double tolerance) {
  const Eigen::Index shared = std::min(psi1.size(), psi2.size());
  if (shared == 0) return {};
  const int levels = std::min(occupied_levels(psi1.head(shared)), occupied_levels(psi2.head(shared)));
  const auto m = moment_factors(weight, sequence, levels, tolerance);
  std::complex<double> sum{};
  for (int n = 0; n < levels; ++n) sum += std::conj(psi1[n]) * psi2[n] * m.factor[n];
  return sum;
}

std::complex<double> kernel_reproduce(const Eigen::VectorXcd& amplitudes, const WeightTable& weight,
                                      const SpectrumSequence& sequence, std::complex<double> z,
                                      double tolerance) {
  if (amplitudes.size() == 0) return {};
  const int levels = occupied_levels(amplitudes);
  const auto m = moment_factors(weight, sequence, levels, tolerance);
  const auto inv = inverse_sqrt_factorials(sequence, levels);
  const std::complex<double> zb = std::conj(z);
  std::complex<double> sum{};
  for (int n = levels - 1; n >= 0; --n) sum = sum * zb + amplitudes[n] * inv[n] * m.factor[n];
  return sum;
}

OvercompletenessReport overcompleteness_check(std::complex<double> z_prime, const WeightTable& weight,
                                              const SpectrumSequence& sequence, double tolerance,
                                              double state_tolerance) {
  const auto state = build_state(sequence, z_prime, state_tolerance);
  OvercompletenessReport out;
  out.z = z_prime;
  out.n_levels = state.n_max;
  out.direct = state.normalized();
  const auto m = moment_factors(weight, sequence, state.n_max, tolerance);
  out.expanded = out.direct;
  for (int n = 0; n < state.n_max; ++n) out.expanded[n] *= m.factor[n];
  out.deviation = (out.expanded - out.direct).norm();
  out.moment_error = m.max_rel_error;
  return out;
}

}  // namespace qdeform
