// Residual evaluation benchmarks: the full cell map, one cell, and the
// knot-split spline integration primitive underneath both.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hyperma/bspline.hpp"
#include "hyperma/problem.hpp"
#include "hyperma/residual.hpp"
#include "hyperma/solver.hpp"

using namespace hyperma;

static void BM_residual_map(benchmark::State& state) {
    const ProblemSpec spec = builtin("default");
    const SolutionField field = exact_field(spec, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        ResidualMap m = residual_map(spec, field);
        benchmark::DoNotOptimize(m);
    }
    state.SetItemsProcessed(state.iterations() *
                            std::max<int64_t>(1, (field.n_x() - 2) * (field.n_y() - 2)));
}
BENCHMARK(BM_residual_map)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_cell_residual(benchmark::State& state) {
    const ProblemSpec spec = builtin("default");
    const SolutionField field = exact_field(spec, 51);
    const int i = field.n_x() / 2, j = field.n_y() / 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cell_residual(spec, field, i, j, 1));
    }
}
BENCHMARK(BM_cell_residual);

static void BM_integrate_spline(benchmark::State& state) {
    const int n = 201;
    std::vector<double> t(n), g(n);
    for (int i = 0; i < n; ++i) {
        t[i] = 2.0 * i / (n - 1);
        g[i] = std::sin(3.0 * t[i]);
    }
    const Spline s = fit(t, g, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_spline(s, 0.05, 1.95));
    }
}
BENCHMARK(BM_integrate_spline);

BENCHMARK_MAIN();
