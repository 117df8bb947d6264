#include "hyperma/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperma {

const EdgeSegment* EdgeData::segment_at(double s) const {
    for (size_t i = 0; i < segments.size(); ++i) {
        const EdgeSegment& seg = segments[i];
        const bool last = (i + 1 == segments.size());
        if (s >= seg.lo && (s < seg.hi || (last && s <= seg.hi))) return &seg;
    }
    return nullptr;
}

namespace {

ProblemSpec make_default() {
    ProblemSpec s;
    s.name = "default";
    s.domain = {0.0, 1.0, -0.5, 0.5};
    auto f = [](double x, double y) {
        const double c = std::cos(y), sh = std::sinh(x);
        return std::sqrt(c * c + sh * sh);
    };
    s.f = f;
    s.f_x = [f](double x, double y) { return std::sinh(x) * std::cosh(x) / f(x, y); };
    s.f_y = [f](double x, double y) { return -std::sin(y) * std::cos(y) / f(x, y); };

    s.west.u = {[](double y) { return std::cos(y); },
                [](double y) { return -std::sin(y); },
                [](double y) { return -std::cos(y); }};
    s.west.w = {[](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};

    auto a_ex = [f](double x, double y) {
        return -(std::sin(y) * std::sinh(x) + f(x, y)) / (std::cos(y) * std::cosh(x));
    };
    auto b_ex = [f](double x, double y) {
        return (-std::sin(y) * std::sinh(x) + f(x, y)) / (std::cos(y) * std::cosh(x));
    };
    s.south.segments = {{0.0, 1.0, std::nullopt, SlopeData{'a', [a_ex](double x) { return a_ex(x, -0.5); }}}};
    s.north.segments = {{0.0, 1.0, std::nullopt, SlopeData{'b', [b_ex](double x) { return b_ex(x, 0.5); }}}};

    s.exact.u = [](double x, double y) { return std::cos(y) * std::cosh(x); };
    s.exact.p = [](double x, double y) { return std::cos(y) * std::sinh(x); };
    s.exact.q = [](double x, double y) { return -std::sin(y) * std::cosh(x); };
    s.exact.a = a_ex;
    s.exact.b = b_ex;
    return s;
}

ProblemSpec make_aggregated() {
    ProblemSpec s;
    s.name = "aggregated";
    s.domain = {0.0, 2.0, -1.0 / 3.0, 2.0 / 3.0};
    s.f = [](double x, double) { return std::exp(x); };
    s.f_x = [](double x, double) { return std::exp(x); };
    s.f_y = [](double, double) { return 0.0; };

    s.west.u = {[](double y) { return std::cos(y); },
                [](double y) { return -std::sin(y); },
                [](double y) { return -std::cos(y); }};
    s.west.w = {[](double y) { return std::cos(y); },
                [](double y) { return -std::sin(y); },
                [](double y) { return -std::cos(y); }};

    auto a_ex = [](double, double y) { return -(std::sin(y) + 1.0) / std::cos(y); };
    auto b_ex = [](double, double y) { return (1.0 - std::sin(y)) / std::cos(y); };
    const double y0 = s.domain.y_min, y1 = s.domain.y_max;
    s.south.segments = {{0.0, 2.0, std::nullopt, SlopeData{'a', [a_ex, y0](double) { return a_ex(0.0, y0); }}}};
    s.north.segments = {{0.0, 2.0, std::nullopt, SlopeData{'b', [b_ex, y1](double) { return b_ex(0.0, y1); }}}};

    s.exact.u = [](double x, double y) { return std::exp(x) * std::cos(y); };
    s.exact.p = [](double x, double y) { return std::exp(x) * std::cos(y); };
    s.exact.q = [](double x, double y) { return -std::exp(x) * std::sin(y); };
    s.exact.a = a_ex;
    s.exact.b = b_ex;
    return s;
}

ProblemSpec make_two_edge() {
    ProblemSpec s;
    s.name = "two-edge";
    s.domain = {1.0, 2.0, 1.0, 2.0};
    const double r6 = std::sqrt(6.0);
    s.f = [r6](double x, double y) { return 2.0 * r6 * x * x * y; };
    s.f_x = [r6](double x, double y) { return 4.0 * r6 * x * y; };
    s.f_y = [r6](double x, double) { return 2.0 * r6 * x * x; };

    // western edge x = 1: u = y^2 + 1, p = 3 y^2
    s.west.u = {[](double y) { return y * y + 1.0; },
                [](double y) { return 2.0 * y; },
                [](double) { return 2.0; }};
    s.west.w = {[](double y) { return 3.0 * y * y; },
                [](double y) { return 6.0 * y; },
                [](double) { return 6.0; }};

    // northern edge y = 2: u = 4 x^3 + 1, q = 4 x^3
    CauchyData north;
    north.u = {[](double x) { return 4.0 * x * x * x + 1.0; },
               [](double x) { return 12.0 * x * x; },
               [](double x) { return 24.0 * x; }};
    north.w = {[](double x) { return 4.0 * x * x * x; },
               [](double x) { return 12.0 * x * x; },
               [](double x) { return 24.0 * x; }};
    s.north.segments = {{1.0, 2.0, north, std::nullopt}};

    s.exact.u = [](double x, double y) { return x * x * x * y * y + 1.0; };
    s.exact.p = [](double x, double y) { return 3.0 * x * x * y * y; };
    s.exact.q = [](double x, double y) { return 2.0 * x * x * x * y; };
    s.exact.a = [r6](double x, double y) { return (r6 - 3.0) * y / x; };
    s.exact.b = [r6](double x, double y) { return -(3.0 + r6) * y / x; };
    return s;
}

ProblemSpec make_varying_bc() {
    ProblemSpec s;
    s.name = "varying-bc";
    s.domain = {1.0, 2.5, -2.0, -1.5};
    auto e = [](double x, double y) { return std::exp(2.0 * y / x); };
    s.f = [e](double x, double y) { return 2.0 / (x * x) * e(x, y); };
    s.f_x = [e](double x, double y) { return -4.0 * e(x, y) * (x + y) / (x * x * x * x); };
    s.f_y = [e](double x, double y) { return 4.0 * e(x, y) / (x * x * x); };

    // western edge x = 1: u = 1 + e^{2y}, p = -2y e^{2y}
    s.west.u = {[](double y) { return 1.0 + std::exp(2.0 * y); },
                [](double y) { return 2.0 * std::exp(2.0 * y); },
                [](double y) { return 4.0 * std::exp(2.0 * y); }};
    s.west.w = {[](double y) { return -2.0 * y * std::exp(2.0 * y); },
                [](double y) { return -2.0 * std::exp(2.0 * y) * (1.0 + 2.0 * y); },
                [](double y) { return -4.0 * std::exp(2.0 * y) * (2.0 + 2.0 * y); }};

    // northern edge y = -1.5: Cauchy data up to the slope sign change of a at
    // x = 1.5, slope a beyond it
    CauchyData ncauchy;
    ncauchy.u = {[](double x) { return 1.0 + std::exp(-3.0 / x); },
                 [](double x) { return 3.0 * std::exp(-3.0 / x) / (x * x); },
                 [](double x) { return std::exp(-3.0 / x) * (9.0 - 6.0 * x) / (x * x * x * x); }};
    ncauchy.w = {[](double x) { return 2.0 / x * std::exp(-3.0 / x); },
                 [](double x) { return std::exp(-3.0 / x) * (6.0 - 2.0 * x) / (x * x * x); },
                 [](double x) {
                     return std::exp(-3.0 / x) * (4.0 * x * x - 24.0 * x + 18.0) /
                            (x * x * x * x * x);
                 }};
    s.north.segments = {
        {1.0, 1.5, ncauchy, std::nullopt},
        {1.5, 2.5, std::nullopt, SlopeData{'a', [](double x) { return 1.0 - 1.5 / x; }}},
    };

    // southern edge y = -2: nothing required while both families leave,
    // slope b once the alpha family starts entering at x = 2
    s.south.segments = {
        {1.0, 2.0, std::nullopt, std::nullopt},
        {2.0, 2.5, std::nullopt, SlopeData{'b', [](double x) { return -2.0 / x; }}},
    };

    s.exact.u = [e](double x, double y) { return 1.0 + e(x, y); };
    s.exact.p = [e](double x, double y) { return -2.0 * y / (x * x) * e(x, y); };
    s.exact.q = [e](double x, double y) { return 2.0 / x * e(x, y); };
    s.exact.a = [](double x, double y) { return 1.0 + y / x; };
    s.exact.b = [](double x, double y) { return y / x; };
    return s;
}

ProblemSpec make_nonsmooth() {
    // default f and initial strip; the upper-edge prescription stays, the
    // lower edge gets a slope with a kink against the strip at (0, -0.5)
    ProblemSpec s = make_default();
    s.name = "nonsmooth";
    s.exact = {};
    s.south.segments = {{0.0, 1.0, std::nullopt,
                         SlopeData{'a', [](double x) { return -std::exp(-1.5 * x) * (x * x + 1.0); }}}};
    return s;
}

}  // namespace

ProblemSpec builtin(const std::string& name) {
    if (name == "default") return make_default();
    if (name == "aggregated") return make_aggregated();
    if (name == "two-edge") return make_two_edge();
    if (name == "varying-bc") return make_varying_bc();
    if (name == "nonsmooth") return make_nonsmooth();
    throw std::runtime_error("unknown builtin case");
}

GeneratedPair generate_from_analytic(ComplexFn w, ComplexFn w1, ComplexFn w2) {
    GeneratedPair out;
    out.u = [w](double x, double y) { return w(x, y).re; };
    out.p = [w1](double x, double y) { return w1(x, y).re; };
    out.q = [w1](double x, double y) { return -w1(x, y).im; };
    out.f = [w2](double x, double y) {
        const ComplexVal v = w2(x, y);
        const double mod = std::hypot(v.re, v.im);
        if (mod < 1e-12) throw std::runtime_error("degenerate f from generator");
        return mod;
    };
    return out;
}

double verify_pde_identity(const Fn2& u, const Fn2& f,
                           const std::vector<std::pair<double, double>>& points) {
    const double h = 1e-4;
    double worst = 0.0;
    for (const auto& [x, y] : points) {
        const double r = (u(x + h, y) - 2.0 * u(x, y) + u(x - h, y)) / (h * h);
        const double t = (u(x, y + h) - 2.0 * u(x, y) + u(x, y - h)) / (h * h);
        const double s = (u(x + h, y + h) - u(x + h, y - h) - u(x - h, y + h) + u(x - h, y - h)) /
                         (4.0 * h * h);
        const double fv = f(x, y);
        worst = std::max(worst, std::abs(r * t - s * s + fv * fv));
    }
    return worst;
}

}  // namespace hyperma
