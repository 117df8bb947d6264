// March kernel benchmarks: one step of each scheme, the regrid that
// follows it, and a whole solve for scale.
#include <benchmark/benchmark.h>

#include "hyperma/problem.hpp"
#include "hyperma/solver.hpp"
#include "hyperma/stepper.hpp"

using namespace hyperma;

namespace {

struct Fixture {
    ProblemSpec spec = builtin("default");
    SolutionField field;
    StepContext ctx;

    explicit Fixture(int n_y) {
        field = exact_field(spec, n_y);
        ctx.spec = &spec;
        ctx.spline_order = 5;
    }
    const GridLine& mid_line() const { return field.lines[field.n_x() / 2]; }
};

}  // namespace

static void BM_step(benchmark::State& state) {
    const Fixture fx(static_cast<int>(state.range(0)));
    const Method method = static_cast<Method>(state.range(1));
    const double h_x = 0.5 * fx.spec.domain.height() / (state.range(0) - 1);
    for (auto _ : state) {
        StepResult r = step(fx.mid_line(), h_x, method, fx.ctx);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_step)->ArgsProduct(
    {{51, 201}, {static_cast<long>(Method::Euler), static_cast<long>(Method::ModifiedEuler),
                 static_cast<long>(Method::RK4)}});

static void BM_regrid(benchmark::State& state) {
    const Fixture fx(static_cast<int>(state.range(0)));
    const double h_x = 0.5 * fx.spec.domain.height() / (state.range(0) - 1);
    const StepResult r = step(fx.mid_line(), h_x, Method::RK4, fx.ctx);
    for (auto _ : state) {
        GridLine line = regrid(r.alpha, r.beta, fx.mid_line().y, fx.ctx);
        benchmark::DoNotOptimize(line);
    }
}
BENCHMARK(BM_regrid)->Arg(51)->Arg(201);

static void BM_solve(benchmark::State& state) {
    const ProblemSpec spec = builtin("default");
    const Method method = static_cast<Method>(state.range(1));
    const int order = method == Method::Euler ? 2 : (method == Method::ModifiedEuler ? 3 : 5);
    for (auto _ : state) {
        SolutionField f = solve(spec, static_cast<int>(state.range(0)), method, order);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_solve)->ArgsProduct(
    {{51, 101}, {static_cast<long>(Method::Euler), static_cast<long>(Method::RK4)}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
