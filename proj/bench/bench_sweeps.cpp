// Serial reference vs OpenMP sweeps over the same trees.

#include <benchmark/benchmark.h>

#include "egorov/dist.hpp"
#include "egorov/weak.hpp"

using namespace egorov;

namespace {

const Domain& domain() {
  static const Domain d = Domain::interval(-2.0, 2.0);
  return d;
}

GenFunc heaviside_times_delta() {
  static const KernelPtr k = make_kernel(2);
  return iota_embed(schwartz_embed(Density::heaviside(), domain()), k) * kernel_genfunc(k, domain(), {0.1});
}

void eval_grid_bench(benchmark::State& state, Exec exec) {
  const GenFunc f = heaviside_times_delta();
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < state.range(0); ++i) pts.push_back({-1.5 + 3.0 * i / state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(eval_grid(f, pts, 1.0 / 64, QuadConfig{}, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void pair_grid_bench(benchmark::State& state, Exec exec) {
  const GenFunc f = heaviside_times_delta();
  const auto suite = default_test_suite(1);
  const auto grid = dyadic_rho_grid(8, 8 + static_cast<int>(state.range(0)) - 1);
  PairOptions opts;
  opts.exec = exec;
  for (auto _ : state) benchmark::DoNotOptimize(pair_grid(f, suite, grid, opts));
  state.SetItemsProcessed(state.iterations() * suite.size() * grid.size());
}

}  // namespace

BENCHMARK_CAPTURE(eval_grid_bench, serial, Exec::serial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(eval_grid_bench, parallel, Exec::parallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(pair_grid_bench, serial, Exec::serial)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(pair_grid_bench, parallel, Exec::parallel)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
