#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdeform/coherent.hpp"
#include "qdeform/error.hpp"
#include "qdeform/expq.hpp"

using namespace qdeform;

namespace {

constexpr double kPi = std::numbers::pi;
const SpectrumSequence kBosonic{SequenceKind::Linear};

SpectrumSequence symmetric_phase(double theta) {
  return SpectrumSequence{SequenceKind::Symmetric, Deformation::phase(theta)};
}

std::complex<double> random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2 * kPi * u(rng));
}

}  // namespace

TEST(BuildState, Vacuum) {
  for (const auto& s : {kBosonic, symmetric_phase(kPi / 6)}) {
    const auto st = build_state(s, 0.0, 1e-12);
    EXPECT_EQ(st.norm_const, 1.0);
    const auto v = st.normalized();
    EXPECT_EQ(v[0], std::complex<double>(1.0));
    for (Eigen::Index n = 1; n < v.size(); ++n) EXPECT_EQ(v[n], std::complex<double>(0.0));
  }
}

TEST(BuildState, BosonicCoefficients) {
  const auto st = build_state(kBosonic, 1.0, 1e-12);
  EXPECT_NEAR(st.norm_const, std::exp(-0.5), 1e-15);
  double fact = 1.0;
  for (int n = 0; n < st.n_max; ++n) {
    if (n > 0) fact *= n;
    EXPECT_NEAR(st.coeffs[n].real(), 1.0 / std::sqrt(fact), 1e-15);
  }
}

TEST(BuildState, PhaseCoefficient) {
  const auto st = build_state(symmetric_phase(kPi / 6), 0.5, 1e-12);
  EXPECT_NEAR(st.coeffs[2].real(), 0.25 / std::pow(3.0, 0.25), 1e-15);
  EXPECT_TRUE(st.exact);
  EXPECT_EQ(st.n_max, 6);
  EXPECT_EQ(st.tail_bound, 0.0);
}

TEST(BuildState, NormalizationInvariants) {
  for (const auto& s : {kBosonic, symmetric_phase(kPi / 12), SpectrumSequence{SequenceKind::Symmetric, Deformation::real(1.1)}}) {
    for (double r : {0.3, 1.0, 2.0}) {
      const auto z = std::polar(r, 0.7);
      const auto st = build_state(s, z, 1e-10);
      EXPECT_EQ(st.coeffs[0], std::complex<double>(1.0));
      EXPECT_LT(st.tail_bound, 1e-10);
      const double mass = st.normalized().squaredNorm();
      EXPECT_LE(mass, 1.0 + 1e-14);
      EXPECT_GE(mass, 1.0 - st.tail_bound - 1e-14);
      const double e = exp_q(s, std::norm(z), 1e-16 * std::exp(std::norm(z)) * 10).real();
      EXPECT_NEAR(st.norm_const * st.norm_const * e, 1.0, 1e-12);
    }
  }
}

TEST(BuildState, RejectsBadInput) {
  EXPECT_THROW(build_state(kBosonic, 1.0, 0.0), Error);
  try {
    build_state(symmetric_phase(0.5), 1.0, 1e-10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PositivityViolation);
  }
}

TEST(EigenResidual, Vacuum) {
  const auto st = build_state(kBosonic, 0.0, 1e-10);
  EXPECT_EQ(eigen_residual(st, build_operators(kBosonic, st.n_max + 3)), 0.0);
}

TEST(EigenResidual, Bosonic) {
  const auto st = build_state(kBosonic, 1.0, 1e-10);
  const double r = eigen_residual(st, build_operators(kBosonic, st.n_max + 1));
  EXPECT_LE(r, 1e-9);
  EXPECT_LE(r, 10 * st.tail_bound);
}

TEST(EigenResidual, PhaseAgainstMatrixVectorProduct) {
  const auto s = symmetric_phase(kPi / 6);
  const auto st = build_state(s, 0.8, 1e-10);
  const auto ops = build_operators(s, st.n_max);
  const double r = eigen_residual(st, ops);
  EXPECT_LE(r, 1e-8);
  const Eigen::VectorXcd v = st.normalized();
  const Eigen::VectorXcd diff = ops.a * v - 0.8 * v;
  EXPECT_NEAR(r, diff.head(st.n_max - 1).norm() / v.norm(), 1e-15);
}

TEST(EigenResidual, Mismatch) {
  const auto st = build_state(kBosonic, 1.0, 1e-10);
  EXPECT_THROW(eigen_residual(st, build_operators(kBosonic, 3)), Error);
  EXPECT_THROW(eigen_residual(st, build_operators(symmetric_phase(0.1), st.n_max)), Error);
}

TEST(EigenResidual, ScalesWithTailBound) {
  std::vector<double> lx, ly;
  const std::complex<double> z{1.2, 0.5};
  for (double tol : {1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12}) {
    const auto st = build_state(kBosonic, z, tol);
    const double r = eigen_residual(st, build_operators(kBosonic, st.n_max + 1));
    lx.push_back(std::log(st.tail_bound));
    ly.push_back(std::log(r));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(slope, 1.0, 0.2);
}

TEST(Overlap, SelfIsOne) {
  for (const auto& s : {kBosonic, symmetric_phase(kPi / 12)}) {
    const auto st = build_state(s, {0.9, -0.4}, 1e-12);
    EXPECT_LT(std::abs(overlap(st, st) - 1.0), 1e-10);
  }
}

TEST(Overlap, WithVacuum) {
  const auto s = symmetric_phase(kPi / 12);
  const auto st = build_state(s, {1.1, 0.3}, 1e-12);
  const auto vac = build_state(s, 0.0, 1e-12);
  const double expected = 1.0 / std::sqrt(exp_q(s, std::norm(st.z), 1e-15).real());
  EXPECT_LT(std::abs(overlap(st, vac) - expected), 1e-14);
}

TEST(Overlap, BosonicClosedForm) {
  const auto s1 = build_state(kBosonic, 1.0, 1e-12);
  const auto s2 = build_state(kBosonic, {0.0, 1.0}, 1e-12);
  const auto expected = std::exp(-0.5) * std::exp(-0.5) * std::exp(std::complex<double>(0.0, 1.0));
  EXPECT_LT(std::abs(overlap(s1, s2) - expected), 1e-14);
  EXPECT_NEAR(std::abs(overlap(s1, s2)), std::exp(-1.0), 1e-14);
}

TEST(Overlap, SequenceMismatch) {
  EXPECT_THROW(overlap(build_state(kBosonic, 0.5, 1e-10), build_state(symmetric_phase(0.2), 0.5, 1e-10)), Error);
}

TEST(Overlap, HermitianSymmetryAndCauchySchwarz) {
  std::mt19937_64 rng(7);
  for (const auto& s : {kBosonic, symmetric_phase(kPi / 12)}) {
    for (int k = 0; k < 50; ++k) {
      const auto a = build_state(s, random_in_disk(rng, 2.0), 1e-12);
      const auto b = build_state(s, random_in_disk(rng, 2.0), 1e-12);
      EXPECT_LT(std::abs(overlap(a, b) - std::conj(overlap(b, a))), 1e-12);
      EXPECT_LE(std::abs(overlap(a, b)), 1.0 + 1e-10);
    }
  }
}

TEST(Continuity, SelfGapIsZero) {
  const auto st = build_state(kBosonic, {0.4, 0.2}, 1e-12);
  const auto gap = continuity_gap(st, st);
  EXPECT_EQ(gap.lhs, 0.0);
  EXPECT_NEAR(gap.rhs, 0.0, 1e-15);
}

TEST(Continuity, BosonicNearbyLabels) {
  const auto gap = continuity_gap(build_state(kBosonic, 0.3, 1e-12), build_state(kBosonic, 0.3001, 1e-12));
  EXPECT_LE(gap.lhs, 1e-7);
  EXPECT_LE(gap.rhs, 1e-7);
  EXPECT_NEAR(gap.lhs, gap.rhs, 1e-12);
  // Direct oracle: |z - z'|^2 to leading order.
  EXPECT_NEAR(gap.lhs, 1e-8, 1e-10);
}

TEST(Continuity, PhaseLabels) {
  const auto s = symmetric_phase(kPi / 6);
  const auto a = build_state(s, 0.5, 1e-12);
  const auto b = build_state(s, 0.6, 1e-12);
  const auto gap = continuity_gap(a, b);
  EXPECT_NEAR(gap.lhs, gap.rhs, 1e-10);
  EXPECT_NEAR(gap.lhs, (a.normalized() - b.normalized()).squaredNorm(), 1e-15);
}

TEST(Continuity, RandomPairsWithinTailBounds) {
  std::mt19937_64 rng(11);
  for (const auto& s : {kBosonic, symmetric_phase(kPi / 12)}) {
    for (int k = 0; k < 100; ++k) {
      const auto a = build_state(s, random_in_disk(rng, 2.0), 1e-10);
      const auto b = build_state(s, random_in_disk(rng, 2.0), 1e-10);
      const auto gap = continuity_gap(a, b);
      EXPECT_LE(std::abs(gap.lhs - gap.rhs), gap.bound);
      EXPECT_LE(std::abs(gap.lhs - gap.rhs), 1e-10);
    }
  }
}
