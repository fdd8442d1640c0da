#include <benchmark/benchmark.h>

#include "sqbath/dynamics.hpp"
#include "sqbath/entanglement.hpp"
#include "sqbath/events.hpp"

namespace {

using namespace sqbath;

void BM_MatrixExp16(benchmark::State& state) {
  const Liouvillian l = build_liouvillian(BathParams(0.5, 0.3), BasisTag::Standard);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(l.mat, 1.7));
}
BENCHMARK(BM_MatrixExp16);

void BM_HermEig4(benchmark::State& state) {
  const BathParams bath(0.5);
  const ComplexMatrix rho =
      ExactPropagator(initial_state(InitialStateSpec::psi2(0.54), bath), bath).matrix_at(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(rho));
}
BENCHMARK(BM_HermEig4);

void BM_Wootters(benchmark::State& state) {
  const BathParams bath(0.1);
  const DensityMatrix rho =
      change_basis(ExactPropagator(initial_state(InitialStateSpec::psi1(0.3), bath), bath).state_at(0.5),
                   BasisTag::Standard, bath);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_wootters(rho));
}
BENCHMARK(BM_Wootters);

void BM_EvolveExact(benchmark::State& state) {
  const BathParams bath(0.5);
  const DensityMatrix rho0 = initial_state(InitialStateSpec::phi(3), bath);
  const auto times = uniform_times(10.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_exact(rho0, bath, times));
}
BENCHMARK(BM_EvolveExact);

void BM_EventsPhi3(benchmark::State& state) {
  const BathParams bath(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(events_for(InitialStateSpec::phi(3), bath));
}
BENCHMARK(BM_EventsPhi3);

}  // namespace

BENCHMARK_MAIN();
