// Unit tests for the characteristic steppers: right-hand sides, the three
// one-step methods, cross-family interpolation, and regridding with its
// boundary fallbacks.
//
// Several tests march the quadratic field u = (y^2 - x^2)/2 with f = 1,
// whose characteristics are straight lines of slope +-1 and along which
// u, p, q vary at most linearly in x — so every explicit one-step method
// reproduces it to roundoff and any marshalling mistake shows up directly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperma/problem.hpp"
#include "hyperma/stepper.hpp"
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

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// f = 1 everywhere; exact solution u = (y^2 - x^2)/2, a = 1, b = -1
ProblemSpec quadratic_spec() {
    ProblemSpec s;
    s.name = "quadratic";
    s.domain = {0.0, 1.0, -1.0, 1.0};
    s.f = [](double, double) { return 1.0; };
    s.f_x = [](double, double) { return 0.0; };
    s.f_y = [](double, double) { return 0.0; };
    return s;
}

GridLine quadratic_line(double x, const std::vector<double>& ys) {
    GridLine line;
    line.x = x;
    line.y = ys;
    for (double y : ys) {
        line.u.push_back(0.5 * (y * y - x * x));
        line.p.push_back(-x);
        line.q.push_back(y);
        line.a.push_back(1.0);
        line.b.push_back(-1.0);
    }
    return line;
}

void check_quadratic_fronts(const StepResult& r, const GridLine& line, double h) {
    const double x1 = line.x + h;
    REQUIRE(r.alpha.y.size() == line.y.size());
    REQUIRE(r.beta.y.size() == line.y.size());
    CHECK(r.alpha.x == doctest::Approx(x1).epsilon(1e-15));
    CHECK(r.beta.x == doctest::Approx(x1).epsilon(1e-15));
    for (size_t j = 0; j < line.y.size(); ++j) {
        INFO("node ", j);
        const double ya = line.y[j] + h, yb = line.y[j] - h;
        CHECK(std::abs(r.alpha.y[j] - ya) < 1e-13);
        CHECK(std::abs(r.alpha.u[j] - 0.5 * (ya * ya - x1 * x1)) < 1e-13);
        CHECK(std::abs(r.alpha.p[j] - -x1) < 1e-13);
        CHECK(std::abs(r.alpha.q[j] - ya) < 1e-13);
        CHECK(std::abs(r.alpha.slope[j] - -1.0) < 1e-13);  // carries b

        CHECK(std::abs(r.beta.y[j] - yb) < 1e-13);
        CHECK(std::abs(r.beta.u[j] - 0.5 * (yb * yb - x1 * x1)) < 1e-13);
        CHECK(std::abs(r.beta.p[j] - -x1) < 1e-13);
        CHECK(std::abs(r.beta.q[j] - yb) < 1e-13);
        CHECK(std::abs(r.beta.slope[j] - 1.0) < 1e-13);  // carries a
    }
}

}  // namespace

TEST_CASE("method names parse and print") {
    CHECK(method_from_string("euler") == Method::Euler);
    CHECK(method_from_string("modified-euler") == Method::ModifiedEuler);
    CHECK(method_from_string("me") == Method::ModifiedEuler);
    CHECK(method_from_string("rk4") == Method::RK4);
    CHECK(method_name(Method::Euler) == "euler");
    CHECK(method_name(Method::ModifiedEuler) == "modified-euler");
    CHECK(method_name(Method::RK4) == "rk4");
    CHECK(thrown_message([] { method_from_string("leapfrog"); }) == "unknown method: leapfrog");
}

TEST_CASE("right-hand sides at a symmetric point") {
    // state (x, y, u, p, q, other-slope) = (0, 0, 1, 0, 0, .), f = 1, grad f = 0,
    // slopes a = -1 and b = 1
    const std::array<double, 6> va{0, 0, 1, 0, 0, 1.0};   // alpha carries b = 1
    const auto ga = rhs_alpha(va, -1.0, 1.0, 0.0, 0.0);
    const std::array<double, 6> want_a{1, -1, 0, 1, 1, 0};
    for (int i = 0; i < 6; ++i) CHECK(ga[i] == doctest::Approx(want_a[i]).epsilon(1e-15));

    const std::array<double, 6> vb{0, 0, 1, 0, 0, -1.0};  // beta carries a = -1
    const auto gb = rhs_beta(vb, 1.0, 1.0, 0.0, 0.0);
    const std::array<double, 6> want_b{1, 1, 0, 1, -1, 0};
    for (int i = 0; i < 6; ++i) CHECK(gb[i] == doctest::Approx(want_b[i]).epsilon(1e-15));
}

TEST_CASE("right-hand sides transport the opposite slope under an f gradient") {
    // exponential-profile state at the origin: p = 1, q = 0, f = 1, f_x = 1,
    // f_y = 0, slopes a = -1, b = 1; the slope-transport component is +-1
    const std::array<double, 6> va{0, 0, 1, 1, 0, 1.0};
    const auto ga = rhs_alpha(va, -1.0, 1.0, 1.0, 0.0);
    const std::array<double, 6> want_a{1, -1, 1, 1, 1, 1};
    for (int i = 0; i < 6; ++i) CHECK(ga[i] == doctest::Approx(want_a[i]).epsilon(1e-15));

    const std::array<double, 6> vb{0, 0, 1, 1, 0, -1.0};
    const auto gb = rhs_beta(vb, 1.0, 1.0, 1.0, 0.0);
    const std::array<double, 6> want_b{1, 1, 1, 1, -1, -1};
    for (int i = 0; i < 6; ++i) CHECK(gb[i] == doctest::Approx(want_b[i]).epsilon(1e-15));
}

TEST_CASE("all three steppers advance the quadratic field exactly") {
    const ProblemSpec spec = quadratic_spec();
    const StepContext ctx{&spec, 5, nullptr};
    const GridLine line = quadratic_line(0.3, linspace(-0.8, 0.8, 9));
    const double h = 0.05;

    check_quadratic_fronts(euler_step(line, h, ctx), line, h);
    check_quadratic_fronts(modified_euler_step(line, h, ctx), line, h);
    check_quadratic_fronts(rk4_step(line, h, ctx), line, h);
}

TEST_CASE("the dispatcher reproduces the named steppers") {
    const ProblemSpec spec = quadratic_spec();
    const StepContext ctx{&spec, 5, nullptr};
    const GridLine line = quadratic_line(0.1, linspace(-0.6, 0.6, 7));
    const StepResult direct = rk4_step(line, 0.02, ctx);
    const StepResult via = step(line, 0.02, Method::RK4, ctx);
    for (size_t j = 0; j < line.y.size(); ++j) {
        CHECK(via.alpha.u[j] == direct.alpha.u[j]);
        CHECK(via.beta.q[j] == direct.beta.q[j]);
    }
}

TEST_CASE("cross interpolation evaluates the carried slope at foreign nodes") {
    CharFront src;
    src.family = Family::Alpha;
    src.x = 0.0;
    src.y = {0.0, 1.0, 2.0};
    src.u = src.p = src.q = {0.0, 0.0, 0.0};
    src.slope = {0.0, 1.0, 4.0};  // y^2

    const auto got = cross_interpolate(src, {0.5, 1.5}, 5);
    REQUIRE(got.size() == 2);
    CHECK(std::abs(got[0] - 0.25) < 1e-12);
    CHECK(std::abs(got[1] - 2.25) < 1e-12);

    // one node: constant continuation
    CharFront one;
    one.y = {0.5};
    one.slope = {3.25};
    const auto c = cross_interpolate(one, {-1.0, 2.0}, 5);
    CHECK(c[0] == 3.25);
    CHECK(c[1] == 3.25);

    CharFront empty;
    CHECK(thrown_message([&] { cross_interpolate(empty, {0.0}, 5); }) ==
          "cross interpolation from empty front");
}

TEST_CASE("regrid merges covering fronts back onto the uniform grid") {
    const ProblemSpec spec = quadratic_spec();
    const StepContext ctx{&spec, 5, nullptr};
    const std::vector<double> grid = linspace(-0.8, 0.8, 9);

    // fronts live slightly off the grid and extend past both edges
    auto front_at = [](Family fam, double x, const std::vector<double>& ys) {
        CharFront fr;
        fr.family = fam;
        fr.x = x;
        for (double y : ys) {
            fr.y.push_back(y);
            fr.u.push_back(0.5 * (y * y - x * x));
            fr.p.push_back(-x);
            fr.q.push_back(y);
            fr.slope.push_back(fam == Family::Alpha ? -1.0 : 1.0);  // carried opposite
        }
        return fr;
    };
    const CharFront alpha = front_at(Family::Alpha, 0.4, linspace(-0.93, 0.87, 10));
    const CharFront beta = front_at(Family::Beta, 0.4, linspace(-0.81, 0.95, 10));

    const GridLine out = regrid(alpha, beta, grid, ctx);
    REQUIRE(out.y.size() == grid.size());
    CHECK(out.x == 0.4);
    CHECK_FALSE(out.crossing);
    for (size_t j = 0; j < grid.size(); ++j) {
        const double y = grid[j];
        INFO("node ", j);
        CHECK(std::abs(out.u[j] - 0.5 * (y * y - 0.16)) < 1e-12);
        CHECK(std::abs(out.p[j] - -0.4) < 1e-12);
        CHECK(std::abs(out.q[j] - y) < 1e-12);
        CHECK(std::abs(out.a[j] - 1.0) < 1e-12);
        CHECK(std::abs(out.b[j] - -1.0) < 1e-12);
    }
}

TEST_CASE("regrid flags reordered or coincident front nodes as a crossing") {
    const ProblemSpec spec = quadratic_spec();
    const StepContext ctx{&spec, 5, nullptr};
    const std::vector<double> grid = linspace(0.0, 1.0, 5);

    auto flat_front = [](Family fam, std::vector<double> ys) {
        CharFront fr;
        fr.family = fam;
        fr.x = 0.5;
        fr.y = std::move(ys);
        fr.u.assign(fr.y.size(), 1.0);
        fr.p.assign(fr.y.size(), 0.0);
        fr.q.assign(fr.y.size(), 0.0);
        fr.slope.assign(fr.y.size(), fam == Family::Alpha ? -1.0 : 1.0);
        return fr;
    };

    const CharFront ordered = flat_front(Family::Beta, {-0.1, 0.3, 0.6, 1.1});
    const CharFront swapped = flat_front(Family::Alpha, {-0.1, 0.6, 0.3, 1.1});
    CHECK(regrid(swapped, ordered, grid, ctx).crossing);
    CHECK_FALSE(regrid(flat_front(Family::Alpha, {-0.1, 0.3, 0.6, 1.1}), ordered, grid, ctx).crossing);

    // two nodes closer than the dedup tolerance collapse and set the flag
    const double h_y = 0.25;
    const CharFront dup = flat_front(Family::Alpha, {-0.1, 0.3, 0.3 + 1e-14 * h_y, 1.1});
    CHECK(regrid(dup, ordered, grid, ctx).crossing);
}

TEST_CASE("an edge slope prescription fills in where its carrier front falls short") {
    ProblemSpec spec = quadratic_spec();
    spec.south.segments = {{0.0, 1.0, std::nullopt, SlopeData{'a', [](double) { return -2.0; }}}};
    const StepContext ctx{&spec, 5, nullptr};
    const std::vector<double> grid = linspace(-0.8, 0.8, 9);

    auto front_at = [](Family fam, const std::vector<double>& ys) {
        CharFront fr;
        fr.family = fam;
        fr.x = 0.4;
        for (double y : ys) {
            fr.y.push_back(y);
            fr.u.push_back(0.5 * (y * y - 0.16));
            fr.p.push_back(-0.4);
            fr.q.push_back(y);
            fr.slope.push_back(fam == Family::Alpha ? -1.0 : 1.0);
        }
        return fr;
    };
    const CharFront alpha = front_at(Family::Alpha, linspace(-0.9, 0.9, 10));   // covers all
    const CharFront beta = front_at(Family::Beta, linspace(-0.75, 0.9, 10));    // misses south

    const GridLine out = regrid(alpha, beta, grid, ctx);
    CHECK(out.a[0] == -2.0);                          // prescription takes over
    CHECK(std::abs(out.a[4] - 1.0) < 1e-12);          // interior still from the beta front
    CHECK(std::abs(out.b[0] - -1.0) < 1e-12);         // alpha front still covers the edge
    CHECK(std::abs(out.u[0] - 0.5 * (0.64 - 0.16)) < 1e-12);
}

TEST_CASE("edge Cauchy data rebuilds the state where both fronts fall short") {
    ProblemSpec spec = quadratic_spec();
    CauchyData south;
    south.u = {[](double x) { return 0.5 * (0.64 - x * x); },  // u(x, -0.8)
               [](double x) { return -x; },
               [](double) { return -1.0; }};
    south.w = {[](double) { return -0.8; },                    // q(x, -0.8)
               [](double) { return 0.0; },
               [](double) { return 0.0; }};
    spec.south.segments = {{0.0, 1.0, south, std::nullopt}};
    const StepContext ctx{&spec, 5, nullptr};
    const std::vector<double> grid = linspace(-0.8, 0.8, 9);

    auto front_at = [](Family fam, const std::vector<double>& ys) {
        CharFront fr;
        fr.family = fam;
        fr.x = 0.4;
        for (double y : ys) {
            fr.y.push_back(y);
            fr.u.push_back(0.5 * (y * y - 0.16));
            fr.p.push_back(-0.4);
            fr.q.push_back(y);
            fr.slope.push_back(fam == Family::Alpha ? -1.0 : 1.0);
        }
        return fr;
    };
    // both fronts miss the south node, but only that node
    const CharFront alpha = front_at(Family::Alpha, linspace(-0.75, 0.9, 10));
    const CharFront beta = front_at(Family::Beta, linspace(-0.72, 0.88, 10));

    const GridLine out = regrid(alpha, beta, grid, ctx);
    CHECK(std::abs(out.u[0] - 0.24) < 1e-12);   // u(0.4, -0.8)
    CHECK(std::abs(out.p[0] - -0.4) < 1e-12);
    CHECK(std::abs(out.q[0] - -0.8) < 1e-12);
    // one-sided strip slopes: r = -1, s = 0, f = 1
    CHECK(std::abs(out.a[0] - 1.0) < 1e-12);
    CHECK(std::abs(out.b[0] - -1.0) < 1e-12);
}

TEST_CASE("a leaving family's front is extrapolated over an unprescribed edge node") {
    const ProblemSpec spec = quadratic_spec();  // no south prescription at all
    const StepContext ctx{&spec, 5, nullptr};
    const std::vector<double> grid = linspace(-0.8, 0.8, 9);

    auto front_at = [](Family fam, double carried, const std::vector<double>& ys) {
        CharFront fr;
        fr.family = fam;
        fr.x = 0.4;
        for (double y : ys) {
            fr.y.push_back(y);
            fr.u.push_back(0.5 * (y * y - 0.16));
            fr.p.push_back(-0.4);
            fr.q.push_back(y);
            fr.slope.push_back(carried);
        }
        return fr;
    };

    // both slopes point out of the domain at the south edge: extrapolate
    const CharFront alpha_out = front_at(Family::Alpha, -1.0, linspace(-0.75, 0.9, 10));
    const CharFront beta_out = front_at(Family::Beta, -1.0, linspace(-0.72, 0.88, 10));
    const GridLine out = regrid(alpha_out, beta_out, grid, ctx);
    CHECK(std::abs(out.u[0] - 0.24) < 1e-12);
    CHECK(std::abs(out.p[0] - -0.4) < 1e-12);
    CHECK(std::abs(out.q[0] - -0.8) < 1e-12);

    // both slopes point into the domain: the data set is genuinely incomplete
    const CharFront alpha_in = front_at(Family::Alpha, 0.5, linspace(-0.75, 0.9, 10));
    const CharFront beta_in = front_at(Family::Beta, 1.0, linspace(-0.72, 0.88, 10));
    CHECK(thrown_message([&] { regrid(alpha_in, beta_in, grid, ctx); }) ==
          "missing boundary condition at edge");
}

TEST_CASE("regrid input validation") {
    const ProblemSpec spec = quadratic_spec();
    const StepContext ctx{&spec, 5, nullptr};
    CharFront fr;
    fr.y = {0.0, 1.0};
    fr.u = fr.p = fr.q = fr.slope = {0.0, 0.0};
    CHECK(thrown_message([&] { regrid(fr, fr, {0.5}, ctx); }) ==
          "regrid needs at least two grid nodes");

    const StepContext detached{nullptr, 5, nullptr};
    const GridLine line = quadratic_line(0.0, {0.0, 0.5, 1.0});
    CHECK_THROWS_AS((void)euler_step(line, 0.1, detached), std::logic_error);
    CHECK(thrown_message([&] { (void)euler_step(line, 0.1, detached); }) ==
          "step context has no problem attached");
}

TEST_CASE("adaptive step control follows the steepest characteristic") {
    CHECK(adaptive_hx({0.5, 2.0}, {-1.0}, 0.01, 0.95) == doctest::Approx(0.00475).epsilon(1e-15));
    // shallow slopes cap the factor at one
    CHECK(adaptive_hx({0.1}, {-0.2}, 0.01, 0.95) == doctest::Approx(0.0095).epsilon(1e-15));
}
