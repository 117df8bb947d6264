#pragma once

#include <string>
#include <vector>

#include "hyperma/problem.hpp"
#include "hyperma/stepper.hpp"

namespace hyperma {

// The computed field: one GridLine per march abscissa. lines.front().x is
// the west edge, lines.back().x the east edge; y is the shared uniform grid.
struct SolutionField {
    std::string case_name;
    Method method = Method::RK4;
    int spline_order = 5;
    double gamma = 0.95;
    std::vector<double> y;
    std::vector<GridLine> lines;
    double wall_seconds = 0;

    int n_x() const { return static_cast<int>(lines.size()); }
    int n_y() const { return static_cast<int>(y.size()); }
    std::vector<double> xs() const;
};

// Largest x-step keeping every characteristic within one y-spacing,
// shrunk by the safety factor: gamma * h_y * min_j{1, 1/|a_j|, 1/|b_j|}.
double adaptive_hx(const std::vector<double>& a, const std::vector<double>& b,
                   double h_y, double gamma);

// March the coupled characteristic systems west to east. `frozen_slopes`
// (testing hook) replaces every a/b lookup — on regridded lines and at
// stepper stages — with the given closed forms.
SolutionField solve(const ProblemSpec& spec, int n_y, Method method = Method::RK4,
                    int spline_order = 5, double gamma = 0.95,
                    const ExactSolution* frozen_slopes = nullptr);

// Field sampled from the closed-form solution on a uniform grid (n_x = 0
// picks an x-resolution comparable to a solve at the same n_y). Throws
// "exact solution unavailable" when the problem has no closed form.
SolutionField exact_field(const ProblemSpec& spec, int n_y, int n_x = 0);

struct Polyline {
    std::vector<double> x, y;
};

// Integrate dy/dx = a (or b) through the computed slope field from the
// given start point, both directions, until the domain boundary. The field
// is evaluated by per-line splines in y blended linearly between lines.
Polyline trace_characteristic(const SolutionField& field, double x0, double y0,
                              Family family);

}  // namespace hyperma
