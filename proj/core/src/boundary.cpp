#include "hyperma/boundary.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "hyperma/bspline.hpp"

namespace hyperma {

namespace {

CharClass side_of(Vec2 tangent, Vec2 normal) {
    const double d = tangent.x * normal.x + tangent.y * normal.y;
    if (d > 0.0) return CharClass::Leaving;
    if (d < 0.0) return CharClass::Entering;
    return CharClass::Boundary;
}

Edge edge_from_normal(Vec2 n) {
    if (n.x == -1.0 && n.y == 0.0) return Edge::West;
    if (n.x == 1.0 && n.y == 0.0) return Edge::East;
    if (n.x == 0.0 && n.y == -1.0) return Edge::South;
    if (n.x == 0.0 && n.y == 1.0) return Edge::North;
    throw std::invalid_argument("normal must be an axis-aligned unit vector");
}

}  // namespace

EdgeClassification classify(Vec2 tangent_alpha, Vec2 tangent_beta, Vec2 normal) {
    EdgeClassification out;
    out.edge = edge_from_normal(normal);
    out.alpha = side_of(tangent_alpha, normal);
    out.beta = side_of(tangent_beta, normal);
    out.required_conditions = (out.alpha == CharClass::Entering ? 1 : 0) +
                              (out.beta == CharClass::Entering ? 1 : 0);
    return out;
}

std::vector<ClassifiedSegment> classify_case(const ProblemSpec& spec) {
    if (!spec.has_exact()) throw std::runtime_error("classification requires exact slopes");

    auto label = [](const EdgeSegment& seg) -> std::string {
        if (seg.cauchy) return "a-and-b";
        if (seg.slope) return std::string(1, seg.slope->family);
        return "none";
    };

    std::vector<ClassifiedSegment> rows;
    auto add = [&](Edge e, double lo, double hi, double x, double y, Vec2 n, std::string cond) {
        const double a = spec.exact.a(x, y), b = spec.exact.b(x, y);
        rows.push_back({e, lo, hi, classify({1.0, a}, {1.0, b}, n), std::move(cond)});
    };
    const Domain& d = spec.domain;

    // west carries the initial strip (full Cauchy data) by construction
    add(Edge::West, d.y_min, d.y_max, d.x_min, 0.5 * (d.y_min + d.y_max), {-1.0, 0.0}, "a-and-b");

    auto add_horizontal = [&](Edge e, const EdgeData& data, double y, Vec2 n) {
        if (data.segments.empty()) {
            add(e, d.x_min, d.x_max, 0.5 * (d.x_min + d.x_max), y, n, "none");
            return;
        }
        for (const EdgeSegment& seg : data.segments)
            add(e, seg.lo, seg.hi, 0.5 * (seg.lo + seg.hi), y, n, label(seg));
    };
    add_horizontal(Edge::South, spec.south, d.y_min, {0.0, -1.0});
    add_horizontal(Edge::North, spec.north, d.y_max, {0.0, 1.0});

    if (spec.east.segments.empty()) {
        add(Edge::East, d.y_min, d.y_max, d.x_max, 0.5 * (d.y_min + d.y_max), {1.0, 0.0}, "none");
    } else {
        for (const EdgeSegment& seg : spec.east.segments)
            add(Edge::East, seg.lo, seg.hi, d.x_max, 0.5 * (seg.lo + seg.hi), {1.0, 0.0}, label(seg));
    }
    return rows;
}

CurveData materialize_curve(const CurveData& c, double lo, double hi) {
    if (c.d1 && c.d2) return c;
    if (!c.value) throw std::invalid_argument("curve has no value function");

    // sample densely and differentiate a degree-5 fit; 801 nodes keep the
    // differentiation error far below any stepper's discretization error
    const int n = 801;
    std::vector<double> t(n), g(n);
    for (int i = 0; i < n; ++i) {
        t[i] = lo + (hi - lo) * i / (n - 1);
        g[i] = c.value(t[i]);
    }
    auto s = std::make_shared<Spline>(fit(t, g, 5));
    auto s1 = std::make_shared<Spline>(s->derivative());
    auto s2 = std::make_shared<Spline>(s1->derivative());

    CurveData out;
    out.value = c.value;
    out.d1 = c.d1 ? c.d1 : Fn1([s1](double x) { return (*s1)(x); });
    out.d2 = c.d2 ? c.d2 : Fn1([s2](double x) { return (*s2)(x); });
    return out;
}

StripExtension extend_vertical_strip(const CurveData& u_edge, const CurveData& p_edge,
                                     const Fn1& f_edge, const std::vector<double>& nodes) {
    if (nodes.empty()) throw std::invalid_argument("empty strip node list");
    CurveData uc = materialize_curve(u_edge, nodes.front(), nodes.back());
    CurveData pc = materialize_curve(p_edge, nodes.front(), nodes.back());

    StripExtension st;
    st.nodes = nodes;
    const size_t n = nodes.size();
    st.u.resize(n); st.p.resize(n); st.q.resize(n); st.r.resize(n);
    st.s.resize(n); st.t.resize(n); st.a.resize(n); st.b.resize(n);
    for (size_t j = 0; j < n; ++j) {
        const double y = nodes[j];
        const double f = f_edge(y);
        st.u[j] = uc.value(y);
        st.p[j] = pc.value(y);
        st.q[j] = uc.d1(y);
        st.t[j] = uc.d2(y);
        st.s[j] = pc.d1(y);
        if (std::abs(st.t[j]) < 1e-12) throw std::runtime_error("initial strip not free (t = 0)");
        st.a[j] = (-st.s[j] + f) / st.t[j];
        st.b[j] = (-st.s[j] - f) / st.t[j];
        st.r[j] = 2.0 * st.a[j] * st.b[j] * f / (st.a[j] - st.b[j]);
    }
    return st;
}

StripExtension extend_horizontal_strip(const CurveData& u_edge, const CurveData& q_edge,
                                       const Fn1& f_edge, const std::vector<double>& nodes) {
    if (nodes.empty()) throw std::invalid_argument("empty strip node list");
    CurveData uc = materialize_curve(u_edge, nodes.front(), nodes.back());
    CurveData qc = materialize_curve(q_edge, nodes.front(), nodes.back());

    StripExtension st;
    st.nodes = nodes;
    const size_t n = nodes.size();
    st.u.resize(n); st.p.resize(n); st.q.resize(n); st.r.resize(n);
    st.s.resize(n); st.t.resize(n); st.a.resize(n); st.b.resize(n);
    for (size_t j = 0; j < n; ++j) {
        const double x = nodes[j];
        const double f = f_edge(x);
        st.u[j] = uc.value(x);
        st.q[j] = qc.value(x);
        st.p[j] = uc.d1(x);
        st.r[j] = uc.d2(x);
        st.s[j] = qc.d1(x);
        if (std::abs(st.r[j]) < 1e-12) throw std::runtime_error("horizontal strip not free (r = 0)");
        st.a[j] = -st.r[j] / (st.s[j] + f);
        st.b[j] = -st.r[j] / (st.s[j] - f);
        st.t[j] = 2.0 * f / (st.a[j] - st.b[j]);
    }
    return st;
}

double slope_from_prescription(double known_slope, char known_family, Prescribed kind,
                               double value, double f) {
    if (known_family != 'a' && known_family != 'b')
        throw std::invalid_argument("known slope family must be 'a' or 'b'");
    const double k = known_slope;
    // the inversion formulas below are written for known b -> missing a; for
    // known a -> missing b the roles of +f and -f swap
    const double sgn = (known_family == 'b') ? 1.0 : -1.0;
    switch (kind) {
        case Prescribed::Slope:
            return value;
        case Prescribed::R: {
            const double den = value - sgn * 2.0 * k * f;
            if (std::abs(den) < 1e-14) throw std::runtime_error("degenerate prescription");
            return k * value / den;
        }
        case Prescribed::S: {
            const double den = value + sgn * f;
            if (std::abs(den) < 1e-14) throw std::runtime_error("degenerate prescription");
            return (value - sgn * f) / den * k;
        }
        case Prescribed::T: {
            if (std::abs(value) < 1e-14) throw std::runtime_error("degenerate prescription");
            return k + sgn * 2.0 * f / value;
        }
    }
    throw std::invalid_argument("unknown prescription kind");
}

}  // namespace hyperma
