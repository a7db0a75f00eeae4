#include <benchmark/benchmark.h>

#include <vector>

#include "amt/bubble.hpp"
#include "amt/constants.hpp"
#include "amt/extremal.hpp"
#include "amt/greens.hpp"
#include "amt/radial_solver.hpp"
#include "amt/testfn.hpp"

static void BM_BuildContext(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(amt::build_context(m));
}
BENCHMARK(BM_BuildContext)->Arg(1)->Arg(4)->Arg(12);

static void BM_ComputeIm(benchmark::State& state) {
  const auto ctx = amt::build_context(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(amt::compute_i_m(ctx));
}
BENCHMARK(BM_ComputeIm)->Arg(1)->Arg(3);

static void BM_SolveGreen(benchmark::State& state) {
  const auto ctx = amt::build_context(static_cast<int>(state.range(0)));
  const double alpha = 0.3 * amt::series_first_eigenvalue(ctx, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(amt::solve_green(ctx, alpha, 1.0));
}
BENCHMARK(BM_SolveGreen)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_AssembleTestFunction(benchmark::State& state) {
  const auto ctx = amt::with_i_m(amt::build_context(static_cast<int>(state.range(0))));
  const auto g = amt::solve_green(ctx, 0.0, 1.0);
  for (auto _ : state) {
    const auto tf = amt::assemble_test_function(ctx, 0.0, g, 1e-4);
    benchmark::DoNotOptimize(amt::evaluate_threshold_gap(tf));
  }
}
BENCHMARK(BM_AssembleTestFunction)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_PolyharmonicSolve(benchmark::State& state) {
  const auto grid = amt::RadialGrid::graded(1.0, static_cast<std::size_t>(state.range(0)));
  const amt::PolyharmonicDirichletSolver solver(grid, 2);
  const std::vector<double> f(grid.size(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PolyharmonicSolve)->RangeMultiplier(2)->Range(512, 8192)->Complexity();

static void BM_MaximizeSubcritical(benchmark::State& state) {
  const auto ctx = amt::build_context(1);
  const double frac = static_cast<double>(state.range(0)) / 100.0;
  const auto cfg = amt::make_config(ctx, 1.0, 0.0, frac * ctx.beta(), 2048);
  for (auto _ : state) benchmark::DoNotOptimize(amt::maximize_subcritical(cfg));
}
BENCHMARK(BM_MaximizeSubcritical)->Arg(50)->Arg(90)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
