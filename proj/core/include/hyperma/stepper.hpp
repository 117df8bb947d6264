#pragma once

#include <array>
#include <string>
#include <vector>

#include "hyperma/problem.hpp"

namespace hyperma {

enum class Method { Euler, ModifiedEuler, RK4 };

Method method_from_string(const std::string& name);  // throws "unknown method"
std::string method_name(Method m);

enum class Family { Alpha, Beta };

// One characteristic family advanced off the grid: per-node position and
// transported state. `slope` carries the OTHER family's slope (b on an
// alpha front, a on a beta front) — each family transports the quantity the
// other one needs.
struct CharFront {
    Family family;
    double x;
    std::vector<double> y, u, p, q, slope;
};

// State on one uniform-in-y grid line of the march.
struct GridLine {
    double x;
    std::vector<double> y, u, p, q, a, b;
    bool crossing = false;  // front nodes crossed or coincided while regridding
};

struct StepResult {
    CharFront alpha, beta;
};

// Shared stepping configuration. `frozen_slopes` is a testing hook: when
// set, every slope lookup uses the given closed forms instead of
// cross-family interpolation, isolating the ODE stepper order from the
// interpolation machinery.
struct StepContext {
    const ProblemSpec* spec = nullptr;
    int spline_order = 5;
    const ExactSolution* frozen_slopes = nullptr;
};

// Right-hand sides of the two coupled characteristic ODE systems, marching
// in x (kappa chosen so dx/dx = 1). v = (x, y, u, p, q, other_slope).
std::array<double, 6> rhs_alpha(const std::array<double, 6>& v, double a_here,
                                double f, double f_x, double f_y);
std::array<double, 6> rhs_beta(const std::array<double, 6>& v, double b_here,
                               double f, double f_x, double f_y);

// One forward-Euler step of both families: tangent-line advance by h_x.
StepResult euler_step(const GridLine& line, double h_x, const StepContext& ctx);

// Modified Euler: half-step predictor fronts, slope refresh by cross-family
// interpolation at the midpoint, then the full step with midpoint rates.
StepResult modified_euler_step(const GridLine& line, double h_x, const StepContext& ctx);

// Classic four-stage Runge-Kutta; every stage refreshes a/b by interpolating
// the other family's same-stage front at the stage's own node positions.
StepResult rk4_step(const GridLine& line, double h_x, const StepContext& ctx);

StepResult step(const GridLine& line, double h_x, Method method, const StepContext& ctx);

// Values of the slope carried by `source` interpolated at the target y's
// (spline of the configured order, extrapolating where a target falls
// outside the source nodes; degree drops when the front has too few nodes).
std::vector<double> cross_interpolate(const CharFront& source, const std::vector<double>& target_ys,
                                      int spline_order);

// Interpolation of both fronts back onto the uniform grid: u, p, q averaged
// between the families where both cover a grid point, taken from the single
// covering family near edges, supplied from the boundary data where neither
// covers ("missing boundary condition at edge" when the data is absent);
// a comes from the beta front, b from the alpha front, with edge-node
// prescriptions from the ProblemSpec taking over where the carrying front
// fell inside the domain.
GridLine regrid(const CharFront& alpha, const CharFront& beta, const std::vector<double>& grid_ys,
                const StepContext& ctx);

}  // namespace hyperma
