#include "qdeform/coherent.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "qdeform/error.hpp"
#include "qdeform/expq.hpp"
#include "qdeform/factorial.hpp"

namespace qdeform {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double gated_box(const SpectrumSequence& sequence, int n) {
  const double b = box_value(sequence, n);
  if (sequence.vanishes(n) || !(b > 0.0)) {
    throw Error(ErrorCode::PositivityViolation, "box value is not strictly positive", n);
  }
  return b;
}

void require_same_sequence(const CoherentState& s1, const CoherentState& s2) {
  if (!(s1.sequence == s2.sequence)) {
    throw Error(ErrorCode::SequenceMismatch, "coherent states belong to different sequences");
  }
}

Eigen::VectorXcd padded(const Eigen::VectorXcd& v, Eigen::Index size) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size);
  out.head(v.size()) = v;
  return out;
}

}  // namespace

CoherentState build_state(const SpectrumSequence& sequence, std::complex<double> z,
                          double tolerance) {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  const double x = std::norm(z);
  const double rough = exp_q(sequence, x, 1e-6).real();
  const double norm_sq = exp_q(sequence, x, 1e-16 * rough).real();

  CoherentState state;
  state.z = z;
  state.sequence = sequence;
  state.tolerance = tolerance;
  state.norm_const = 1.0 / std::sqrt(norm_sq);

  std::vector<std::complex<double>> c;
  if (const auto m = sequence.closure_order()) {
    std::complex<double> term{1.0, 0.0};
    for (int n = 0; n < *m; ++n) {
      if (n > 0) term *= z / std::sqrt(gated_box(sequence, n));
      c.push_back(term);
    }
    state.exact = true;
    state.tail_bound = 0.0;
  } else {
    const bool monotone = sequence.nondecreasing();
    std::complex<double> term{1.0, 0.0};
    for (int n = 0;; ++n) {
      if (n > kDefaultMaxOrder) {
        throw Error(ErrorCode::NoConvergence, "coherent state tail bound not reached", n);
      }
      const double next_box = gated_box(sequence, n + 1);
      if (monotone && next_box >= 2.0 * x) {
        const double bound = state.norm_const * std::sqrt(2.0) * std::abs(term);
        if (bound < tolerance) {
          state.tail_bound = bound;
          break;
        }
      }
      c.push_back(term);
      term *= z / std::sqrt(next_box);
    }
  }
  state.n_max = static_cast<int>(c.size());
  state.coeffs = Eigen::Map<Eigen::VectorXcd>(c.data(), state.n_max);
  return state;
}

double eigen_residual(const CoherentState& state, const FockOperatorSet& ops) {
  if (!(state.sequence == ops.sequence)) {
    throw Error(ErrorCode::SequenceMismatch, "operators and state belong to different sequences");
  }
  if (ops.n_max < state.n_max) {
    throw Error(ErrorCode::DimensionMismatch, "operator truncation smaller than the state", ops.n_max);
  }
  const Eigen::VectorXcd v = padded(state.normalized(), ops.n_max);
  const Eigen::VectorXcd r = ops.a * v - state.z * v;
  return r.head(ops.n_max - 1).norm() / v.norm();
}

std::complex<double> overlap(const CoherentState& s1, const CoherentState& s2) {
  require_same_sequence(s1, s2);
  const double scale = s1.norm_const * s2.norm_const;
  const double tol = 0.1 * kEps * std::max(1.0, 1.0 / scale);
  return scale * exp_q(s1.sequence, std::conj(s1.z) * s2.z, tol);
}

ContinuityGap continuity_gap(const CoherentState& s1, const CoherentState& s2) {
  require_same_sequence(s1, s2);
  const Eigen::Index size = std::max(s1.n_max, s2.n_max);
  const Eigen::VectorXcd diff = padded(s1.normalized(), size) - padded(s2.normalized(), size);
  ContinuityGap gap;
  gap.lhs = diff.squaredNorm();
  gap.rhs = 2.0 * (1.0 - overlap(s1, s2).real());
  const double t = s1.tail_bound + s2.tail_bound;
  gap.bound = 4.0 * t + t * t + 64.0 * kEps;
  return gap;
}

}  // namespace qdeform
