#include <benchmark/benchmark.h>

#include "crowdflow/classify.hpp"
#include "crowdflow/delta.hpp"
#include "crowdflow/model.hpp"
#include "crowdflow/solver.hpp"

using namespace crowdflow;

namespace {

SystemParams params(double a_exp = -1.5) { return {a_exp, 5.0, SourceTerm::zero()}; }

void BM_Eigenvalues(benchmark::State& state) {
  const SystemParams p = params();
  double rho = 0.3;
  for (auto _ : state) {
    const Eigenpair e = eigenvalues({rho, -3.0}, 0.0, p);
    benchmark::DoNotOptimize(e);
    rho = rho < 12.0 ? rho + 1e-3 : 0.3;
  }
}
BENCHMARK(BM_Eigenvalues);

void BM_LlfStep(benchmark::State& state) {
  solver::RunSpec spec;
  spec.params = params();
  spec.left = {3.0, -3.0};
  spec.right = {2.0, -5.0};
  spec.n_cells = static_cast<int>(state.range(0));
  solver::Field field = solver::initial_field(spec);
  solver::StepOptions opts;
  for (auto _ : state) {
    const auto r = solver::llf_step(field, spec.params, opts);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LlfStep)->Arg(1000)->Arg(10000);

void BM_DeltaIntegrate(benchmark::State& state) {
  const SystemParams p = params();
  for (auto _ : state) {
    const auto traj = delta::integrate_delta_neg({3.0, 3.0}, {9.0, -8.0}, p, 1.0, 1e-3);
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_DeltaIntegrate);

void BM_ScanCell(benchmark::State& state) {
  const SystemParams p = params();
  const State left{3.0, 3.0};
  double u = -9.0;
  for (auto _ : state) {
    const auto cell = delta::scan_cell(left, {9.0, u}, p, 0.0, 1e-3);
    benchmark::DoNotOptimize(cell);
    u = u < 9.0 ? u + 1e-2 : -9.0;
  }
}
BENCHMARK(BM_ScanCell);

void BM_ClassifyRegion(benchmark::State& state) {
  const SystemParams p = params();
  const State left{3.0, -3.0};
  double u_r = -6.0;
  for (auto _ : state) {
    const auto pattern = classify::classify_region(left, {2.0, u_r}, p, 0.0);
    benchmark::DoNotOptimize(pattern);
    u_r = u_r < -2.0 ? u_r + 1e-2 : -6.0;
  }
}
BENCHMARK(BM_ClassifyRegion);

void BM_ExtractWaves(benchmark::State& state) {
  solver::RunSpec spec;
  spec.params = params();
  spec.left = {3.0, -3.0};
  spec.right = {2.0, -5.0};
  spec.n_cells = 1000;
  spec.t_end = 5.0;
  const auto result = solver::run(spec);
  for (auto _ : state) {
    const auto report = solver::extract_wave_structure(result.snapshots.back(), spec.left,
                                                       spec.right, spec.params);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_ExtractWaves);

}  // namespace

BENCHMARK_MAIN();
