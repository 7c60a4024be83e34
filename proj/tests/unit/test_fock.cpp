#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdeform/error.hpp"
#include "qdeform/fock.hpp"

using namespace qdeform;

namespace {

constexpr double kPi = std::numbers::pi;

SpectrumSequence symmetric_phase(double theta) {
  return SpectrumSequence{SequenceKind::Symmetric, Deformation::phase(theta)};
}

Eigen::VectorXcd basis(int dim, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v[n] = 1.0;
  return v;
}

}  // namespace

TEST(BuildOperators, LowersUnitLevel) {
  const auto ops = build_operators(symmetric_phase(kPi / 5), 2);
  const Eigen::VectorXcd v = ops.a * basis(2, 1);
  EXPECT_NEAR(std::abs(v[0] - 1.0), 0.0, 1e-15);
  EXPECT_EQ(v[1], std::complex<double>(0.0));
}

TEST(BuildOperators, BosonicCreation) {
  const auto ops = build_operators(SpectrumSequence{SequenceKind::Linear}, 5);
  const Eigen::VectorXcd v = ops.a_dag * basis(5, 2);
  EXPECT_NEAR(std::abs(v[3] - std::sqrt(3.0)), 0.0, 1e-15);
  EXPECT_NEAR(v.norm(), std::sqrt(3.0), 1e-15);
}

TEST(BuildOperators, PhaseDeltaDiagonal) {
  const auto ops = build_operators(symmetric_phase(kPi / 6), 4);
  const double expected[] = {0.0, 1.0, std::sqrt(3.0), 2.0};
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(std::abs(ops.delta(n, n) - expected[n]), 0.0, 1e-14);
  EXPECT_LT((ops.delta - Eigen::MatrixXcd(ops.delta.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildOperators, MatchesLoopOracle) {
  const double theta = kPi / 9;
  std::vector<std::complex<double>> roots;
  for (int n = 0; n < 8; ++n) roots.emplace_back(std::sqrt(oracle::phase_box(theta, n)));
  const auto ops = build_operators(symmetric_phase(theta), 8);
  EXPECT_LT((ops.a - oracle::ladder(roots, 8)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildOperators, Adjointness) {
  const auto ops = build_operators(symmetric_phase(kPi / 12), 11);
  EXPECT_EQ(ops.a_dag, Eigen::MatrixXcd(ops.a.adjoint()));
}

TEST(BuildOperators, SpectralConsistency) {
  const auto s = symmetric_phase(kPi / 12);
  const auto ops = build_operators(s, 12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(ops.delta);
  std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + 12);
  std::vector<double> boxes = oracle::phase_boxes(kPi / 12, 11);
  std::sort(eig.begin(), eig.end());
  std::sort(boxes.begin(), boxes.end());
  for (int k = 0; k < 12; ++k) EXPECT_NEAR(eig[k], boxes[k], 1e-12);
}

TEST(BuildOperators, GateAndMinimumSize) {
  EXPECT_THROW(build_operators(SpectrumSequence{SequenceKind::Linear}, 1), Error);
  try {
    build_operators(symmetric_phase(kPi / 6), 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PositivityViolation);
    EXPECT_EQ(e.index(), 6);
  }
  EXPECT_NO_THROW(build_operators(symmetric_phase(kPi / 6), 7, Realization::Algebraic));
}

TEST(QMutator, BosonicCommutator) {
  const auto ops = build_operators(SpectrumSequence{SequenceKind::Linear}, 8);
  EXPECT_LE(verify_qmutator(ops, 1.0).max(), 1e-13);
  EXPECT_LT((ops.delta_prime - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(QMutator, PhaseResidual) {
  const auto s = symmetric_phase(kPi / 6);
  const auto ops = build_operators(s, 5);
  const auto q = s.deformation().value();
  EXPECT_LE(verify_qmutator(ops, q).max(), 1e-13);
  // Direct matrix arithmetic on the top-left block.
  const Eigen::MatrixXcd m = ops.a * ops.a_dag - q * ops.a_dag * ops.a - ops.delta_prime;
  EXPECT_LE(m.topRows(4).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(QMutator, NegativeControlIdentity) {
  const auto s = symmetric_phase(kPi / 6);
  auto ops = build_operators(s, 5);
  ops.delta_prime = Eigen::MatrixXcd::Identity(5, 5);
  EXPECT_GT(verify_qmutator(ops, s.deformation().value()).qmutator, 0.1);
}

TEST(QMutator, RealAndArikCoon) {
  for (const auto& s : {SpectrumSequence{SequenceKind::Symmetric, Deformation::real(0.7)},
                        SpectrumSequence{SequenceKind::ArikCoon, Deformation::real(1.4)}}) {
    const auto ops = build_operators(s, 10);
    EXPECT_LE(verify_qmutator(ops, s.deformation().value()).max(), 1e-11);
  }
}

TEST(QOscillator, BosonicIdentity) {
  const auto ops = build_operators(SpectrumSequence{SequenceKind::Linear}, 6);
  EXPECT_LE(verify_Q_oscillator(ops, 1.0), 1e-13);
}

TEST(QOscillator, PhaseIdentity) {
  const auto s = symmetric_phase(kPi / 8);
  const auto Q = s.deformation().value();
  const auto ops = build_operators(s, 6);
  EXPECT_LE(verify_Q_oscillator(ops, Q), 1e-12);
  for (int n = 0; n < 10; ++n) {
    const auto lhs = oracle::symmetric_box(Q, n + 1) - Q * oracle::symmetric_box(Q, n);
    EXPECT_LT(std::abs(lhs - std::pow(Q, -n)), 1e-13);
  }
}

TEST(QOscillator, NegativeControlWrongSign) {
  const auto s = symmetric_phase(kPi / 8);
  const auto Q = s.deformation().value();
  const auto ops = build_operators(s, 6);
  Eigen::VectorXcd qn(6);
  for (int k = 0; k < 6; ++k) qn[k] = std::pow(Q, -k);
  const Eigen::MatrixXcd wrong = ops.a * ops.a_dag - Q * ops.a_dag * ops.a + Eigen::MatrixXcd(qn.asDiagonal());
  EXPECT_GT(max_abs_rows(wrong, 5), 1.0);
}

TEST(QOscillator, AlgebraicPastClosure) {
  for (double theta : {kPi / 8, kPi / 12}) {
    const auto s = symmetric_phase(theta);
    const auto ops = build_operators(s, 16, Realization::Algebraic);
    const auto q = s.deformation().value();
    EXPECT_LE(verify_qmutator(ops, q).max(), 1e-12);
    EXPECT_LE(verify_Q_oscillator(ops, q), 1e-12);
  }
}

TEST(TruncationLocality, LeadingBlocksAgree) {
  const auto s = symmetric_phase(kPi / 12);
  const auto q = s.deformation().value();
  const auto small = build_operators(s, 6);
  const auto large = build_operators(s, 11);
  const Eigen::MatrixXcd rs = small.a * small.a_dag - q * small.a_dag * small.a - small.delta_prime;
  const Eigen::MatrixXcd rl = large.a * large.a_dag - q * large.a_dag * large.a - large.delta_prime;
  EXPECT_LE((rs.topLeftCorner(5, 5) - rl.topLeftCorner(5, 5)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((small.a.topLeftCorner(6, 6) - large.a.topLeftCorner(6, 6)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(FMap, IdentityOnItself) {
  const auto s = symmetric_phase(kPi / 7);
  const auto map = build_fmap(s, s.deformation(), 1.0, 6);
  for (int n = 0; n < 6; ++n) EXPECT_NEAR(std::abs(map.f[n] - 1.0), 0.0, 1e-15);
}

TEST(FMap, BosonicSourceFactors) {
  const auto Q = std::polar(1.0, kPi / 8);
  const auto map = build_fmap(SpectrumSequence{SequenceKind::Linear}, Deformation::phase(kPi / 8), 1.0, 7);
  for (int n = 0; n < 7; ++n) {
    const double expected = std::sqrt(oracle::symmetric_box(Q, n + 1).real() / (n + 1));
    EXPECT_NEAR(map.f[n].real(), expected, 1e-14);
  }
}

TEST(FMap, NotInvertible) {
  try {
    build_fmap(symmetric_phase(kPi / 4), Deformation::phase(kPi / 9), 1.0, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
    EXPECT_EQ(e.index(), 3);
  }
}

TEST(FMap, NegativeRatio) {
  // sin(0.95 (n+1)) first turns negative at n + 1 = 4.
  try {
    build_fmap(SpectrumSequence{SequenceKind::Linear}, Deformation::phase(0.95), 1.0, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeRatio);
    EXPECT_EQ(e.index(), 3);
  }
}

TEST(FMap, ConsistentWithNativeQOscillator) {
  const auto target = Deformation::phase(kPi / 8);
  const SpectrumSequence source{SequenceKind::Linear};
  const auto ops = build_operators(source, 8);
  const auto map = build_fmap(source, target, 1.0, 8);
  const auto native = build_operators(SpectrumSequence{SequenceKind::Symmetric, target}, 8);
  const Eigen::MatrixXcd A = map.annihilation(ops);
  const Eigen::MatrixXcd Ad = map.creation(ops);
  EXPECT_LE(q_oscillator_residual(A, Ad, target.value()), 1e-12);
  EXPECT_LE((A - native.a).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((Ad - native.a_dag).cwiseAbs().maxCoeff(), 1e-12);
  // F^2 = [N+1]_Q [rho_{N+1}]^{-1}.
  for (int n = 0; n < 8; ++n) {
    EXPECT_NEAR(std::norm(map.f[n]), oracle::phase_box(kPi / 8, n + 1) / (n + 1), 1e-14);
  }
}

TEST(FMap, AlphaScalesCreation) {
  const auto target = Deformation::phase(kPi / 8);
  const SpectrumSequence source{SequenceKind::Linear};
  const auto ops = build_operators(source, 6);
  const auto map = build_fmap(source, target, {0.0, 2.0}, 6);
  const auto unit = build_fmap(source, target, 1.0, 6);
  EXPECT_LE((map.creation(ops) - std::complex<double>(0.0, 2.0) * unit.creation(ops)).cwiseAbs().maxCoeff(), 1e-15);
}
