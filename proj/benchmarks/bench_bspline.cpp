// Spline kernel micro-benchmarks: collocation fit, evaluation, and
// derivative construction at the sizes the march actually uses.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hyperma/bspline.hpp"

using namespace hyperma;

namespace {

std::vector<double> nodes(int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = 2.0 * i / (n - 1);
    return t;
}

std::vector<double> samples(const std::vector<double>& t) {
    std::vector<double> g;
    g.reserve(t.size());
    for (double x : t) g.push_back(std::sin(3.0 * x) + 0.25 * x * x);
    return g;
}

}  // namespace

static void BM_fit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int degree = static_cast<int>(state.range(1));
    const std::vector<double> t = nodes(n), g = samples(t);
    for (auto _ : state) {
        Spline s = fit(t, g, degree);
        benchmark::DoNotOptimize(s);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_fit)
    ->ArgsProduct({{51, 201, 801}, {3, 5}})
    ->Complexity(benchmark::oN);

static void BM_eval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const std::vector<double> t = nodes(n), g = samples(t);
    const Spline s = fit(t, g, 5);
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-4;
        if (x > 2.0) x = 0.0;
        benchmark::DoNotOptimize(s(x));
    }
}
BENCHMARK(BM_eval)->Arg(51)->Arg(801);

static void BM_eval_sweep(benchmark::State& state) {
    const std::vector<double> t = nodes(201), g = samples(t);
    const Spline s = fit(t, g, 5);
    const std::vector<double> xs = nodes(1000);
    for (auto _ : state) {
        double acc = 0.0;
        for (double x : xs) acc += s(x);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_eval_sweep);

static void BM_derivative(benchmark::State& state) {
    const std::vector<double> t = nodes(201), g = samples(t);
    const Spline s = fit(t, g, 5);
    for (auto _ : state) {
        Spline d = s.derivative();
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_derivative);

BENCHMARK_MAIN();
