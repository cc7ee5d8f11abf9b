#include <benchmark/benchmark.h>

#include <cmath>

#include "ma_radial/kernels.hpp"
#include "ma_radial/regularity.hpp"
#include "ma_radial/solver.hpp"

using namespace ma_radial;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_ProfilePass(benchmark::State& state) {
    const Grid grid = Grid::graded(0.5, static_cast<int>(state.range(1)));
    const ScalarFn phi = [](double t) { return (1 + t) * (2 + std::sin(5 * t)); };
    for (auto _ : state) benchmark::DoNotOptimize(profile_pass(grid, 2, phi, 2.0, mode(state)));
    label(state);
}
BENCHMARK(BM_ProfilePass)->ArgsProduct({{0, 1}, {256, 1024, 4096}})->Unit(benchmark::kMillisecond);

void BM_SolveExplicit(benchmark::State& state) {
    const Problem p = Problem::make(2, "exp(-1/t)", 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_explicit(p, mode(state)));
    label(state);
}
BENCHMARK(BM_SolveExplicit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PicardSolve(benchmark::State& state) {
    const Problem p = Problem::make(2, "(2*t)^2*exp(xi)", 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(picard_solve(p, mode(state)));
    label(state);
}
BENCHMARK(BM_PicardSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HadamardCheck(benchmark::State& state) {
    const UnivariateExpr F(Expr::parse("exp(-1/t^2)"));
    const auto x = default_x_grid();
    for (auto _ : state) benchmark::DoNotOptimize(hadamard_check(F, 2, 3, x, mode(state)));
    label(state);
}
BENCHMARK(BM_HadamardCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
