#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qdeform/sequence.hpp"

namespace qdeform {

/// How the ladder operators are realized on the truncated Fock basis.
///
/// Hermitian: a|n> = sqrt([rho_n]_q)|n-1> with real square roots and
/// a_dag = a^dagger. Requires [rho_n]_q > 0 on every used level.
///
/// Algebraic: principal complex square roots and a_dag = a^T. The creation
/// operator is then only the formal partner of a (for deformed algebras "+"
/// is not complex conjugation), but every defining identity stays exact past
/// the unitary range, e.g. beyond n = pi/theta for phase q.
enum class Realization { Hermitian, Algebraic };

/// Dense matrices on the basis |0> .. |n_max - 1>.
struct FockOperatorSet {
  SpectrumSequence sequence{SequenceKind::Linear};
  Realization realization = Realization::Hermitian;
  int n_max = 0;
  Eigen::MatrixXcd a;            ///< a[n-1][n] = sqrt([rho_n]_q)
  Eigen::MatrixXcd a_dag;
  Eigen::MatrixXcd delta;        ///< a_dag * a, diag [rho_n]_q
  Eigen::MatrixXcd delta_prime;  ///< diag [rho_{n+1}]_q - q [rho_n]_q
  Eigen::MatrixXcd number;       ///< diag n
};

FockOperatorSet build_operators(const SpectrumSequence& sequence, int n_max,
                                Realization realization = Realization::Hermitian);

/// Max |entry| over rows 0 .. rows-1. The top Fock level cannot satisfy
/// ladder relations in a truncation, so checks pass rows = n_max - 1.
double max_abs_rows(const Eigen::MatrixXcd& m, Eigen::Index rows);

struct QMutatorReport {
  double qmutator = 0.0;    ///< a a_dag - q a_dag a - delta'
  double a_delta = 0.0;     ///< a delta - q delta a - delta' a
  double delta_adag = 0.0;  ///< delta a_dag - q a_dag delta - a_dag delta'
  double max() const { return std::max({qmutator, a_delta, delta_adag}); }
};

QMutatorReport verify_qmutator(const FockOperatorSet& ops, std::complex<double> q);

/// Residual of A A+ - Q A+ A - Q^{-N} over rows 0 .. n-2.
double q_oscillator_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& A_dag,
                             std::complex<double> Q);

inline double verify_Q_oscillator(const FockOperatorSet& ops, std::complex<double> Q) {
  return q_oscillator_residual(ops.a, ops.a_dag, Q);
}

/// Change of generators A = F a, A+ = alpha a+ F carrying the algebra built
/// on `source` to the Q-oscillator. f_n solves
/// sqrt([n+1]_Q) = f_n sqrt([rho_{n+1}]_q), i.e. F^2 = [N+1]_Q [rho_{N+1}]_q^{-1}.
struct FMap {
  std::complex<double> alpha{1.0, 0.0};
  Eigen::VectorXcd f;
  Deformation target = Deformation::classical();
  SpectrumSequence source{SequenceKind::Linear};
  Realization realization = Realization::Hermitian;
  int n_max = 0;

  Eigen::MatrixXcd F() const { return f.asDiagonal(); }
  Eigen::MatrixXcd annihilation(const FockOperatorSet& ops) const;
  Eigen::MatrixXcd creation(const FockOperatorSet& ops) const;
};

/// Throws NotInvertible (index n) when [rho_{n+1}]_q = 0 and, for the
/// Hermitian realization, NegativeRatio when [n+1]_Q / [rho_{n+1}]_q < 0.
FMap build_fmap(const SpectrumSequence& source, const Deformation& target_Q,
                std::complex<double> alpha, int n_max,
                Realization realization = Realization::Hermitian);

}  // namespace qdeform
