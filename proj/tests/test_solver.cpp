// Unit tests for the marching solver: parameter validation, grid landing,
// accuracy against closed forms, classical convergence orders with the slope
// coupling frozen, divergence detection, the exact-field sampler, and
// characteristic tracing.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperma/metrics.hpp"
#include "hyperma/problem.hpp"
#include "hyperma/solver.hpp"

using namespace hyperma;

namespace {

template <typename F>
std::string thrown_message(F&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

}  // namespace

TEST_CASE("solve validates its parameters") {
    const ProblemSpec spec = builtin("default");
    CHECK(thrown_message([&] { solve(spec, 51, Method::RK4, 1); }) ==
          "spline order must be at least 2");
    CHECK(thrown_message([&] { solve(spec, 10, Method::RK4, 5); }) ==
          "n_y too small for spline order (need at least 2*order + 3)");
    CHECK(thrown_message([&] { solve(spec, 51, Method::RK4, 5, 0.0); }) ==
          "gamma out of range (0, 1)");
    CHECK(thrown_message([&] { solve(spec, 51, Method::RK4, 5, 1.0); }) ==
          "gamma out of range (0, 1)");
    CHECK(thrown_message([&] { solve(spec, 51, Method::RK4, 5, -0.5); }) ==
          "gamma out of range (0, 1)");
}

TEST_CASE("the march lands exactly on the east edge") {
    const ProblemSpec spec = builtin("default");
    const SolutionField field = solve(spec, 31, Method::Euler, 2);
    REQUIRE(field.n_x() >= 2);
    const std::vector<double> xs = field.xs();
    CHECK(xs.front() == spec.domain.x_min);
    CHECK(xs.back() == spec.domain.x_max);  // exact, not merely close
    for (size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
    CHECK(field.n_y() == 31);
    CHECK(field.y.front() == spec.domain.y_min);
    CHECK(field.y.back() == spec.domain.y_max);
}

TEST_CASE("fourth-order run reproduces the closed form tightly") {
    const ProblemSpec spec = builtin("default");
    const SolutionField field = solve(spec, 51, Method::RK4, 5);
    const GlobalError eu = global_error(field, spec.exact, 'u');
    const GlobalError ea = global_error(field, spec.exact, 'a');
    CHECK(eu.max_abs < 1e-7);
    CHECK(ea.max_abs < 1e-5);
    CHECK(eu.scaled == doctest::Approx(eu.max_abs / 51).epsilon(1e-12));
}

TEST_CASE("repeated solves are bitwise identical") {
    const ProblemSpec spec = builtin("default");
    const SolutionField f1 = solve(spec, 41, Method::ModifiedEuler, 3);
    const SolutionField f2 = solve(spec, 41, Method::ModifiedEuler, 3);
    REQUIRE(f1.n_x() == f2.n_x());
    for (int i = 0; i < f1.n_x(); ++i) {
        CHECK(f1.lines[i].x == f2.lines[i].x);
        for (int j = 0; j < f1.n_y(); ++j) {
            CHECK(f1.lines[i].u[j] == f2.lines[i].u[j]);
            CHECK(f1.lines[i].a[j] == f2.lines[i].a[j]);
        }
    }
}

TEST_CASE("classical orders emerge with the slope coupling frozen") {
    // replacing the transported slopes by the closed forms isolates the
    // one-step methods, which must then show their textbook orders
    const ProblemSpec spec = builtin("default");
    struct Probe {
        Method method;
        int spline_order;
        double lo, hi;
    };
    const Probe probes[] = {
        {Method::Euler, 2, 0.7, 1.3},
        {Method::ModifiedEuler, 3, 1.6, 2.4},
        {Method::RK4, 5, 3.3, 4.7},
    };
    for (const Probe& pr : probes) {
        std::vector<double> hs, errs;
        for (int n_y : {25, 51, 101}) {
            const SolutionField field =
                solve(spec, n_y, pr.method, pr.spline_order, 0.95, &spec.exact);
            hs.push_back(spec.domain.height() / (n_y - 1));
            errs.push_back(global_error(field, spec.exact, 'u').max_abs);
        }
        const double order = fit_order(hs, errs);
        INFO("method ", method_name(pr.method), " fitted order ", order);
        CHECK(order > pr.lo);
        CHECK(order < pr.hi);
    }
}

TEST_CASE("a near-rigid initial strip stalls the march and is reported") {
    // u'' ~ 1e-10 on the west edge makes the slopes ~1e10, so the adaptive
    // step collapses and the line budget runs out almost immediately
    ProblemSpec spec;
    spec.name = "stall";
    spec.domain = {0.0, 1.0, -0.5, 0.5};
    spec.f = [](double, double) { return 1.0; };
    spec.f_x = [](double, double) { return 0.0; };
    spec.f_y = [](double, double) { return 0.0; };
    spec.west.u = {[](double y) { return 0.5e-10 * y * y; },
                   [](double y) { return 1e-10 * y; },
                   [](double) { return 1e-10; }};
    spec.west.w = {[](double) { return 0.0; }, [](double) { return 0.0; },
                   [](double) { return 0.0; }};
    const std::string msg = thrown_message([&] { solve(spec, 13, Method::Euler, 5); });
    CHECK(starts_with(msg, "solver diverged at x = "));
}

TEST_CASE("exact-field sampling") {
    const ProblemSpec spec = builtin("default");

    const SolutionField at5 = exact_field(spec, 21, 5);
    REQUIRE(at5.n_x() == 5);
    REQUIRE(at5.n_y() == 21);
    const std::vector<double> xs = at5.xs();
    CHECK(xs.front() == spec.domain.x_min);
    CHECK(xs.back() == spec.domain.x_max);
    for (int i = 0; i < at5.n_x(); ++i) {
        for (int j = 0; j < at5.n_y(); ++j) {
            const double x = xs[i], y = at5.y[j];
            CHECK(at5.lines[i].u[j] == doctest::Approx(spec.exact.u(x, y)).epsilon(1e-15));
            CHECK(at5.lines[i].a[j] == doctest::Approx(spec.exact.a(x, y)).epsilon(1e-15));
        }
    }

    // default x-resolution tracks what a solve at the same n_y would use
    const SolutionField def = exact_field(spec, 51);
    const double h_y = spec.domain.height() / 50.0;
    const int expect = static_cast<int>(std::ceil(spec.domain.width() / (0.95 * h_y))) + 1;
    CHECK(def.n_x() == expect);

    CHECK(thrown_message([&] { exact_field(builtin("nonsmooth"), 21); }) ==
          "exact solution unavailable");
}

TEST_CASE("a degenerate zero-width domain yields the strip alone") {
    ProblemSpec spec = builtin("default");
    spec.domain.x_max = spec.domain.x_min;
    const SolutionField field = solve(spec, 21, Method::Euler, 2);
    CHECK(field.n_x() == 1);
    CHECK(field.lines[0].x == spec.domain.x_min);
}

TEST_CASE("characteristic traces follow the closed-form slope field") {
    const ProblemSpec spec = builtin("default");
    const SolutionField field = solve(spec, 101, Method::RK4, 5);

    const Polyline tr = trace_characteristic(field, 0.5, 0.2, Family::Alpha);
    REQUIRE(tr.x.size() == tr.y.size());
    REQUIRE(tr.x.size() >= 3);
    for (size_t i = 1; i < tr.x.size(); ++i) CHECK(tr.x[i] > tr.x[i - 1]);

    // reference: integrate dy/dx = a(x, y) through the closed-form slope
    // field with a fine fixed-step fourth-order scheme from the same start
    auto reference_y = [&](double x_from, double y_from, double x_to) {
        const int steps = 4000;
        const double h = (x_to - x_from) / steps;
        double x = x_from, y = y_from;
        for (int i = 0; i < steps; ++i) {
            const double k1 = spec.exact.a(x, y);
            const double k2 = spec.exact.a(x + 0.5 * h, y + 0.5 * h * k1);
            const double k3 = spec.exact.a(x + 0.5 * h, y + 0.5 * h * k2);
            const double k4 = spec.exact.a(x + h, y + h * k3);
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            x += h;
        }
        return y;
    };

    // the alpha characteristic from (0.5, 0.2) leaves through the east edge
    // going right (ending near y = -0.28) and through the north edge going
    // left (around x = 0.234)
    CHECK(tr.x.back() == 1.0);
    CHECK(std::abs(tr.y.back() - reference_y(0.5, 0.2, 1.0)) < 2e-3);
    CHECK(tr.y.front() > 0.5 - 1e-6);
    CHECK(tr.x.front() > 0.214);
    CHECK(tr.x.front() < 0.254);

    // pointwise comparison along the whole polyline
    for (size_t i = 0; i < tr.x.size(); i += tr.x.size() / 7 + 1) {
        const double want = reference_y(0.5, 0.2, tr.x[i]);
        CHECK(std::abs(tr.y[i] - want) < 2e-3);
    }

    CHECK(thrown_message([&] { trace_characteristic(field, 2.0, 0.0, Family::Alpha); }) ==
          "trace start outside domain");
    CHECK(thrown_message([&] { trace_characteristic(field, 0.5, 0.9, Family::Beta); }) ==
          "trace start outside domain");

    // corner starts are legal
    const Polyline corner = trace_characteristic(field, 0.0, -0.5, Family::Beta);
    CHECK(corner.x.front() == 0.0);
    CHECK(corner.y.front() == -0.5);
}

TEST_CASE("beta traces mirror the slope field sign structure") {
    const ProblemSpec spec = builtin("default");
    const SolutionField field = solve(spec, 101, Method::RK4, 5);
    // b > 0 everywhere, so a beta characteristic from the center rises to
    // the right and falls to the left
    const Polyline tr = trace_characteristic(field, 0.5, 0.0, Family::Beta);
    REQUIRE(tr.x.size() >= 3);
    CHECK(tr.y.back() > 0.0);
    CHECK(tr.y.front() < 0.0);
}
