#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperma/problem.hpp"
#include "hyperma/solver.hpp"

namespace hyperma {

// Error of one variable on the final march line against the closed form.
// `scaled` is the 1/N_y-weighted maximum (the headline metric); `max_abs`
// is the plain maximum, which is what order fits should use since the
// 1/N_y weight shifts fitted slopes by one.
struct GlobalError {
    double scaled = 0, max_abs = 0;
};
GlobalError global_error(const SolutionField& field, const ExactSolution& exact, char var);

// Least-squares slope of log(err) against log(h). Throws on non-positive
// errors and on fewer than three samples.
double fit_order(const std::vector<double>& h, const std::vector<double>& err);

struct ConvergenceEntry {
    int n_y = 0, n_x = 0;
    double h_y = 0;
    bool has_errors = false;    // closed form available
    bool has_residual = false;  // residual map evaluated
    GlobalError u, p, q, a, b;
    double eps1 = 0, eps2 = 0;  // largest interior cell residual per flux field
    double wall_seconds = 0;
};

struct ConvergenceRecord {
    std::string case_name;
    Method method = Method::RK4;
    int spline_order = 5;
    double gamma = 0.95;
    std::vector<ConvergenceEntry> entries;
};

// Solve the same problem over a list of grid resolutions. Solves may run
// concurrently; entries come back in list order either way.
ConvergenceRecord convergence_study(const ProblemSpec& spec, const std::vector<int>& n_y_list,
                                    Method method = Method::RK4, int spline_order = 5,
                                    double gamma = 0.95, bool with_residual = true,
                                    bool concurrent = true);

// Fitted order per error column, for every column whose values are all
// positive and finite across the record (needs at least three entries).
std::vector<std::pair<std::string, double>> fitted_orders(const ConvergenceRecord& rec);

// CSV serialization of a record (17 significant digits; absent values "nan").
std::string convergence_csv(const ConvergenceRecord& rec);

namespace detail {
std::string fmt17(double v);
}

}  // namespace hyperma
