#include <vector>

#include <benchmark/benchmark.h>

#include "csqs/csqs_state.hpp"
#include "csqs/kernels.hpp"
#include "csqs/parallel.hpp"
#include "csqs/phase_space.hpp"

namespace {

const csqs::NormalizedCsqs& bench_state() {
  static const csqs::NormalizedCsqs state = csqs::normalize(csqs::StateParams::from_t({1.5, 0.0}, 0.5));
  return state;
}

auto closed_wigner() {
  return [](double x, double y) { return csqs::wigner_closed(bench_state(), {x, y}); };
}

void BM_FillSerial(benchmark::State& st) {
  const csqs::PhaseGrid grid = csqs::PhaseGrid::default_grid();
  std::vector<double> values(grid.size());
  for (auto _ : st) {
    csqs::kernels::fill_serial(grid, values, closed_wigner());
    benchmark::DoNotOptimize(values.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(grid.size()));
}

void BM_FillOmp(benchmark::State& st) {
  const csqs::PhaseGrid grid = csqs::PhaseGrid::default_grid();
  std::vector<double> values(grid.size());
  const int workers = csqs::resolve_workers(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    csqs::kernels::fill_omp(grid, values, closed_wigner(), workers);
    benchmark::DoNotOptimize(values.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(grid.size()));
  st.counters["workers"] = workers;
}

std::vector<double> sampled_field(const csqs::PhaseGrid& grid) {
  std::vector<double> values(grid.size());
  csqs::kernels::fill_serial(grid, values, closed_wigner());
  return values;
}

void BM_SimpsonSerial(benchmark::State& st) {
  const csqs::PhaseGrid grid = csqs::PhaseGrid::default_grid();
  const std::vector<double> values = sampled_field(grid);
  for (auto _ : st) benchmark::DoNotOptimize(csqs::kernels::simpson_serial(grid, values));
}

void BM_SimpsonOmp(benchmark::State& st) {
  const csqs::PhaseGrid grid = csqs::PhaseGrid::default_grid();
  const std::vector<double> values = sampled_field(grid);
  const int workers = csqs::resolve_workers(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(csqs::kernels::simpson_omp(grid, values, workers));
  st.counters["workers"] = workers;
}

}  // namespace

BENCHMARK(BM_FillSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FillOmp)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimpsonSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimpsonOmp)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
