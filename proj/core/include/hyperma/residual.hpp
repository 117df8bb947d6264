#pragma once

#include <vector>

#include "hyperma/bspline.hpp"
#include "hyperma/problem.hpp"
#include "hyperma/solver.hpp"

namespace hyperma {

// The two flux fields whose circulation around a cell must balance the
// cell integral of f^2. Both blow up as the characteristic families merge;
// that is reported as "hyperbolicity lost in residual evaluation".
struct FluxPair {
    double h1x, h1y;  // first field  (built from p): (a+b, -2) * p f/(a-b)
    double h2x, h2y;  // second field (built from q): (2ab, -(a+b)) * q f/(a-b)
};
FluxPair flux_fields(double p, double q, double a, double b, double f);

// Integral of a spline over [lo, hi], split at interior knots so the
// Gauss rule is exact on each polynomial piece.
double integrate_spline(const Spline& s, double lo, double hi, int quad_points = 3);

struct ResidualCell {
    int i = 0, j = 0;  // 1-based grid indices of the cell's center node
    double x_center = 0, y_center = 0;
    double eps1 = 0, eps2 = 0;  // area-scaled defect of each flux circulation
    double conserve = 0;        // area-scaled gap between the two circulations
};

struct ResidualMap {
    std::vector<ResidualCell> cells;  // interior cells, i-major then j
    double max_eps1 = 0, max_eps2 = 0, max_conserve = 0;
    int peak1 = -1, peak2 = -1;  // index into cells of each maximum (-1 if empty)
};

// Evaluate the circulation defect on every interior cell of the field.
// Edge integrals use degree-5 cross splines of the flux components
// (y-splines per march line chained into x-splines along cell midlines,
// and the transpose construction for the vertical edges).
ResidualMap residual_map(const ProblemSpec& spec, const SolutionField& field,
                         int quad_points = 3);

// Single-cell variants (i, j 1-based center node, interior only). These
// rebuild the full assembly; prefer residual_map when many cells are needed.
double cell_residual(const ProblemSpec& spec, const SolutionField& field, int i, int j,
                     int which, int quad_points = 3);
double conservative_identity(const ProblemSpec& spec, const SolutionField& field, int i,
                             int j, int quad_points = 3);

}  // namespace hyperma
