#pragma once

#include <string>
#include <vector>

#include "hyperma/problem.hpp"

namespace hyperma {

enum class Edge { West, East, South, North };
enum class CharClass { Entering, Leaving, Boundary };

struct Vec2 {
    double x, y;
};

struct EdgeClassification {
    Edge edge;
    CharClass alpha, beta;
    int required_conditions;  // count of Entering families (Boundary counts as Leaving)
};

// Sign test of each family's tangent against the outward edge normal:
// positive dot product leaves, negative enters, zero runs along the boundary
// (treated as leaving). The normal must be axis-aligned unit.
EdgeClassification classify(Vec2 tangent_alpha, Vec2 tangent_beta, Vec2 normal);

// Per-edge, per-segment classification of a builtin-style problem sampled at
// segment midpoints using the exact slope fields, with the condition label
// the problem's boundary data prescribes there ("a-and-b" / "a" / "b" /
// "none"). Row order: W, S (ascending), N (ascending), E.
struct ClassifiedSegment {
    Edge edge;
    double lo, hi;
    EdgeClassification cls;
    std::string condition;
};
std::vector<ClassifiedSegment> classify_case(const ProblemSpec& spec);

// Second-order data extended along a boundary strip: abscissae (y for
// vertical strips, x for horizontal) plus u, p, q, r, s, t and the two
// characteristic slopes at each node.
struct StripExtension {
    std::vector<double> nodes;
    std::vector<double> u, p, q, r, s, t, a, b;
};

// Vertical (x = const) Cauchy strip: q = u', t = u'', s = p', then
// a = (-s+f)/t, b = (-s-f)/t, r = 2ab f/(a-b). Requires |u''| >= 1e-12
// everywhere ("initial strip not free (t = 0)"). Derivatives come from the
// curve's closed forms when present, otherwise from differentiating a
// degree-5 spline fit of values sampled at the nodes.
StripExtension extend_vertical_strip(const CurveData& u_edge, const CurveData& p_edge,
                                     const Fn1& f_edge, const std::vector<double>& nodes);

// Horizontal (y = const) Cauchy strip: p = u', r = u'', s = q', then
// a = -r/(s+f), b = -r/(s-f), t = 2f/(a-b). Requires |u''| >= 1e-12
// ("horizontal strip not free (r = 0)").
StripExtension extend_horizontal_strip(const CurveData& u_edge, const CurveData& q_edge,
                                       const Fn1& f_edge, const std::vector<double>& nodes);

enum class Prescribed { Slope, R, S, T };

// Missing slope of the entering family from the one prescribed quantity and
// the known slope of the other family: the three inversion formulas
// a = b r/(r - 2bf), a = (s-f)/(s+f) b, a = b + 2f/t (mirrored when the
// known slope is a), or a pass-through when the slope itself is prescribed.
// Vanishing denominators raise "degenerate prescription".
double slope_from_prescription(double known_slope, char known_family, Prescribed kind,
                               double value, double f);

// Curve with guaranteed first and second derivatives: closed forms pass
// through, sampled curves get degree-5 spline differentiation over [lo, hi].
CurveData materialize_curve(const CurveData& c, double lo, double hi);

}  // namespace hyperma
