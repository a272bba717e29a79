// Serial reference vs OpenMP for the two data-parallel kernels.
#include <benchmark/benchmark.h>

#include <string>

#include "eedp/moo.hpp"
#include "eedp/oracle.hpp"

using namespace eedp;

namespace {

const dispatch::DispatchProblem& problem() {
  static const auto p =
      dispatch::load_problem(std::string(EEDP_DATA_DIR) + "/two_gen_650.json");
  return p;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_GridFront(benchmark::State& state) {
  const auto grid = oracle::GridSpec::for_problem(problem(), 0.001L);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::grid_front(problem(), grid, mode(state)));
  }
}
BENCHMARK(BM_GridFront)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_BuildFront(benchmark::State& state) {
  moo::SweepOptions options;
  options.execution = mode(state);
  const smoothing::SmoothParam mu{0.1L, 0.1L, 1e-6L};
  for (auto _ : state) {
    benchmark::DoNotOptimize(moo::build_front(problem(), 70, mu, options));
  }
}
BENCHMARK(BM_BuildFront)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
