#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hyperma {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

struct Domain {
    double x_min, x_max, y_min, y_max;
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    bool contains(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

// Scalar function of the edge parameter with optional closed-form
// derivatives. When d1/d2 are absent, consumers differentiate a degree-5
// spline fit of sampled values instead (see boundary module).
struct CurveData {
    Fn1 value;
    Fn1 d1{};
    Fn1 d2{};
};

// Cauchy data along an edge: u on the edge plus the transverse first
// derivative (p for vertical edges, q for horizontal ones).
struct CauchyData {
    CurveData u;
    CurveData w;
};

// Directly prescribed characteristic slope along an edge segment.
struct SlopeData {
    char family;  // 'a' or 'b'
    Fn1 slope;
};

// One edge sub-segment [lo, hi) in the edge parameter (y for W/E, x for N/S);
// the last segment of an edge is closed at hi. At most one prescription.
struct EdgeSegment {
    double lo, hi;
    std::optional<CauchyData> cauchy;
    std::optional<SlopeData> slope;
};

struct EdgeData {
    std::vector<EdgeSegment> segments;
    // segment containing the given parameter value, or nullptr
    const EdgeSegment* segment_at(double s) const;
};

struct ExactSolution {
    Fn2 u, p, q, a, b;
    explicit operator bool() const { return static_cast<bool>(u); }
};

struct ProblemSpec {
    std::string name;
    Domain domain{};
    Fn2 f, f_x, f_y;
    CauchyData west;  // the initial strip: u and p prescribed on x = x_min
    EdgeData south, north, east;
    ExactSolution exact;
    bool has_exact() const { return static_cast<bool>(exact); }
};

// Fully populated problem definition for one of the five built-in cases:
// default, aggregated, two-edge, varying-bc, nonsmooth.
// Throws "unknown builtin case" otherwise.
ProblemSpec builtin(const std::string& name);

// Complex value as an explicit (re, im) pair; argument convention is
// z = x + i y evaluated componentwise.
struct ComplexVal {
    double re, im;
};
using ComplexFn = std::function<ComplexVal(double, double)>;

struct GeneratedPair {
    Fn2 u;  // Re w(x+iy)
    Fn2 p;  // u_x = Re w'
    Fn2 q;  // u_y = -Im w'
    Fn2 f;  // |w''(x+iy)|; throws "degenerate f from generator" where it vanishes
};

// Solution pair u = Re(w), f = |w''| from a complex analytic w given with its
// first and second derivatives; the pair satisfies u_xx u_yy - u_xy^2 + f^2 = 0
// identically wherever w'' does not vanish.
GeneratedPair generate_from_analytic(ComplexFn w, ComplexFn w1, ComplexFn w2);

// Max over the sample points of |u_xx u_yy - u_xy^2 + f^2| with second
// derivatives by central differences (step 1e-4).
double verify_pde_identity(const Fn2& u, const Fn2& f,
                           const std::vector<std::pair<double, double>>& points);

}  // namespace hyperma
