#include "qdeform/fock.hpp"

#include <cmath>
#include <string>

#include "qdeform/error.hpp"
#include "qdeform/factorial.hpp"

namespace qdeform {

namespace {

std::complex<double> level_value(const SpectrumSequence& sequence, int n, Realization realization) {
  if (sequence.vanishes(n)) return 0.0;
  if (realization == Realization::Hermitian || sequence.self_conjugate()) {
    return box_value(sequence, n);
  }
  return sequence.box_complex(n);
}

std::complex<double> level_root(std::complex<double> b, Realization realization) {
  if (realization == Realization::Hermitian) return std::sqrt(b.real());
  return std::sqrt(b);
}

}  // namespace

FockOperatorSet build_operators(const SpectrumSequence& sequence, int n_max,
                                Realization realization) {
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 2", n_max);
  if (realization == Realization::Hermitian) require_positive(sequence, n_max - 1);

  FockOperatorSet ops;
  ops.sequence = sequence;
  ops.realization = realization;
  ops.n_max = n_max;
  ops.a = Eigen::MatrixXcd::Zero(n_max, n_max);
  ops.delta_prime = Eigen::MatrixXcd::Zero(n_max, n_max);
  ops.number = Eigen::MatrixXcd::Zero(n_max, n_max);

  const auto q = sequence.deformation().value();
  std::complex<double> previous = level_value(sequence, 0, realization);
  for (int n = 0; n < n_max; ++n) {
    const auto next = level_value(sequence, n + 1, realization);
    if (n + 1 < n_max) ops.a(n, n + 1) = level_root(next, realization);
    ops.delta_prime(n, n) = next - q * previous;
    ops.number(n, n) = static_cast<double>(n);
    previous = next;
  }
  ops.a_dag = realization == Realization::Hermitian ? Eigen::MatrixXcd(ops.a.adjoint())
                                                    : Eigen::MatrixXcd(ops.a.transpose());
  ops.delta = ops.a_dag * ops.a;
  return ops;
}

double max_abs_rows(const Eigen::MatrixXcd& m, Eigen::Index rows) {
  if (rows <= 0) return 0.0;
  return m.topRows(rows).cwiseAbs().maxCoeff();
}

QMutatorReport verify_qmutator(const FockOperatorSet& ops, std::complex<double> q) {
  const Eigen::Index rows = ops.n_max - 1;
  const auto& a = ops.a;
  const auto& ad = ops.a_dag;
  const auto& d = ops.delta;
  const auto& dp = ops.delta_prime;
  QMutatorReport report;
  report.qmutator = max_abs_rows(a * ad - q * (ad * a) - dp, rows);
  report.a_delta = max_abs_rows(a * d - q * (d * a) - dp * a, rows);
  report.delta_adag = max_abs_rows(d * ad - q * (ad * d) - ad * dp, rows);
  return report;
}

double q_oscillator_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& A_dag,
                             std::complex<double> Q) {
  if (A.rows() != A.cols() || A_dag.rows() != A.rows() || A_dag.cols() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "A and A+ must be square and of equal size");
  }
  const Eigen::Index n = A.rows();
  Eigen::VectorXcd q_minus_n(n);
  for (Eigen::Index k = 0; k < n; ++k) q_minus_n(k) = std::pow(Q, -static_cast<double>(k));
  const Eigen::MatrixXcd residual =
      A * A_dag - Q * (A_dag * A) - Eigen::MatrixXcd(q_minus_n.asDiagonal());
  return max_abs_rows(residual, n - 1);
}

Eigen::MatrixXcd FMap::annihilation(const FockOperatorSet& ops) const {
  if (ops.n_max != n_max) throw Error(ErrorCode::DimensionMismatch, "F-map and operators differ in size");
  if (!(ops.sequence == source)) throw Error(ErrorCode::SequenceMismatch, "operators not built on the F-map source");
  return f.asDiagonal() * ops.a;
}

Eigen::MatrixXcd FMap::creation(const FockOperatorSet& ops) const {
  if (ops.n_max != n_max) throw Error(ErrorCode::DimensionMismatch, "F-map and operators differ in size");
  if (!(ops.sequence == source)) throw Error(ErrorCode::SequenceMismatch, "operators not built on the F-map source");
  return alpha * (ops.a_dag * f.asDiagonal());
}

FMap build_fmap(const SpectrumSequence& source, const Deformation& target_Q,
                std::complex<double> alpha, int n_max, Realization realization) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be positive", n_max);
  const SpectrumSequence target{SequenceKind::Symmetric, target_Q};

  FMap map;
  map.alpha = alpha;
  map.target = target_Q;
  map.source = source;
  map.realization = realization;
  map.n_max = n_max;
  map.f.resize(n_max);
  for (int n = 0; n < n_max; ++n) {
    if (source.vanishes(n + 1)) {
      throw Error(ErrorCode::NotInvertible,
                  "[rho_" + std::to_string(n + 1) + "]_q vanishes; rho_N is not invertible", n);
    }
    const auto rho = level_value(source, n + 1, realization);
    const auto tq = level_value(target, n + 1, realization);
    const auto ratio = tq / rho;
    if (realization == Realization::Hermitian) {
      if (ratio.real() < 0.0) {
        throw Error(ErrorCode::NegativeRatio,
                    "[n+1]_Q / [rho_{n+1}]_q = " + format_value(ratio.real()) + " is negative", n);
      }
      map.f(n) = std::sqrt(ratio.real());
    } else {
      map.f(n) = std::sqrt(ratio);
    }
  }
  return map;
}

}  // namespace qdeform
