#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "qdeform/bargmann.hpp"
#include "qdeform/coherent.hpp"
#include "qdeform/expq.hpp"
#include "qdeform/fock.hpp"
#include "qdeform/measure.hpp"

using namespace qdeform;

namespace {

const SpectrumSequence kBosonic{SequenceKind::Linear};
const SpectrumSequence kPhase{SequenceKind::Symmetric, Deformation::phase(std::numbers::pi / 12)};

void BM_ExpQBosonic(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exp_q_series(kBosonic, x, 1e-14));
}
BENCHMARK(BM_ExpQBosonic)->Arg(1)->Arg(10)->Arg(50);

void BM_BuildOperators(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_operators(kBosonic, n, Realization::Algebraic));
}
BENCHMARK(BM_BuildOperators)->Arg(16)->Arg(64)->Arg(256);

void BM_QMutator(benchmark::State& state) {
  const auto ops = build_operators(kBosonic, static_cast<int>(state.range(0)), Realization::Algebraic);
  for (auto _ : state) benchmark::DoNotOptimize(verify_qmutator(ops, 1.0));
}
BENCHMARK(BM_QMutator)->Arg(16)->Arg(64);

void BM_CoherentState(benchmark::State& state) {
  const std::complex<double> z{1.5, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(build_state(kBosonic, z, 1e-12));
}
BENCHMARK(BM_CoherentState);

void BM_ContinuityGap(benchmark::State& state) {
  const auto a = build_state(kPhase, {0.8, 0.3}, 1e-12);
  const auto b = build_state(kPhase, {-0.4, 1.1}, 1e-12);
  for (auto _ : state) benchmark::DoNotOptimize(continuity_gap(a, b));
}
BENCHMARK(BM_ContinuityGap);

void BM_WbarPhase(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(wbar_series(kPhase, 3.7, 64));
}
BENCHMARK(BM_WbarPhase);

void BM_InvertWeightPhase(benchmark::State& state) {
  const std::vector<double> grid{-0.5, 0.0, 0.5, 1.0};
  InversionOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(invert_weight(kPhase, grid, 1e-2, 0.0, 64, opts));
}
BENCHMARK(BM_InvertWeightPhase)->Unit(benchmark::kMillisecond);

void BM_VerifyMomentsClosedForm(benchmark::State& state) {
  const auto table = bosonic_table(bosonic_grid(10));
  for (auto _ : state) benchmark::DoNotOptimize(verify_moments(table, 10));
}
BENCHMARK(BM_VerifyMomentsClosedForm)->Unit(benchmark::kMicrosecond);

void BM_KernelReproduce(benchmark::State& state) {
  const auto table = bosonic_table(bosonic_grid(12));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(6) / std::sqrt(6.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_reproduce(psi, table, kBosonic, {0.3, 0.4}, 1e-6));
}
BENCHMARK(BM_KernelReproduce)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
