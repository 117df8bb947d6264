#include "hyperma/residual.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperma/quadrature.hpp"

namespace hyperma {

FluxPair flux_fields(double p, double q, double a, double b, double f) {
    if (std::abs(a - b) < 1e-12)
        throw std::runtime_error("hyperbolicity lost in residual evaluation");
    const double c1 = p * f / (a - b);
    const double c2 = q * f / (a - b);
    return {c1 * (a + b), -2.0 * c1, c2 * 2.0 * a * b, -c2 * (a + b)};
}

double integrate_spline(const Spline& s, double lo, double hi, int quad_points) {
    const double eps = 1e-14 * (hi - lo);
    std::vector<double> cuts{lo};
    for (double k : s.knots())
        if (k > lo + eps && k < hi - eps && k > cuts.back() + eps) cuts.push_back(k);
    cuts.push_back(hi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] <= eps) continue;
        total += gauss_legendre([&s](double x) { return s(x); }, cuts[i], cuts[i + 1],
                                quad_points);
    }
    return total;
}

namespace {

constexpr int kEdgeDegree = 5;  // degree of the cross splines along cell edges

int cap_degree(int want, std::size_t n_nodes) {
    return std::min<int>(want, static_cast<int>(n_nodes) - 1);
}

}  // namespace

ResidualMap residual_map(const ProblemSpec& spec, const SolutionField& field,
                         int quad_points) {
    const int n_x = field.n_x(), n_y = field.n_y();
    ResidualMap map;
    if (n_x < 3 || n_y < 3) return map;

    const std::vector<double> xs = field.xs();
    const std::vector<double>& ys = field.y;

    // Flux components at every grid node.
    const std::size_t nn = static_cast<std::size_t>(n_x) * n_y;
    std::vector<double> h1x(nn), h1y(nn), h2x(nn), h2y(nn);
    for (int i = 0; i < n_x; ++i) {
        const GridLine& ln = field.lines[i];
        for (int j = 0; j < n_y; ++j) {
            const FluxPair h = flux_fields(ln.p[j], ln.q[j], ln.a[j], ln.b[j],
                                           spec.f(ln.x, ys[j]));
            const std::size_t k = static_cast<std::size_t>(i) * n_y + j;
            h1x[k] = h.h1x;
            h1y[k] = h.h1y;
            h2x[k] = h.h2x;
            h2y[k] = h.h2y;
        }
    }

    std::vector<double> half_x(n_x - 1), half_y(n_y - 1);
    for (int i = 0; i + 1 < n_x; ++i) half_x[i] = 0.5 * (xs[i] + xs[i + 1]);
    for (int j = 0; j + 1 < n_y; ++j) half_y[j] = 0.5 * (ys[j] + ys[j + 1]);

    const int nci = n_x - 2, ncj = n_y - 2;  // interior cell counts
    std::vector<double> sum1(static_cast<std::size_t>(nci) * ncj, 0.0);
    std::vector<double> sum2(sum1.size(), 0.0);
    auto cell = [ncj](int ic, int jc) {  // 0-based center node (ic,jc)
        return static_cast<std::size_t>(ic - 1) * ncj + (jc - 1);
    };

    const int ydeg = cap_degree(kEdgeDegree, ys.size());
    const int xdeg = cap_degree(kEdgeDegree, xs.size());

    // Horizontal edges: per-line y-splines of Hx evaluated on the half-y
    // rows, then an x-spline along each row integrated across cell columns.
    std::vector<double> m1(static_cast<std::size_t>(n_x) * (n_y - 1));
    std::vector<double> m2(m1.size());
    {
        std::vector<double> col(n_y);
        for (int i = 0; i < n_x; ++i) {
            for (int j = 0; j < n_y; ++j) col[j] = h1x[static_cast<std::size_t>(i) * n_y + j];
            const Spline s1 = fit(ys, col, ydeg);
            for (int j = 0; j < n_y; ++j) col[j] = h2x[static_cast<std::size_t>(i) * n_y + j];
            const Spline s2 = fit(ys, col, ydeg);
            for (int jh = 0; jh + 1 < n_y; ++jh) {
                m1[static_cast<std::size_t>(i) * (n_y - 1) + jh] = s1(half_y[jh]);
                m2[static_cast<std::size_t>(i) * (n_y - 1) + jh] = s2(half_y[jh]);
            }
        }
    }
    {
        std::vector<double> row(n_x);
        for (int jh = 0; jh + 1 < n_y; ++jh) {
            for (int pass = 0; pass < 2; ++pass) {
                const std::vector<double>& m = pass == 0 ? m1 : m2;
                std::vector<double>& sum = pass == 0 ? sum1 : sum2;
                for (int i = 0; i < n_x; ++i)
                    row[i] = m[static_cast<std::size_t>(i) * (n_y - 1) + jh];
                const Spline s = fit(xs, row, xdeg);
                for (int ic = 1; ic <= nci; ++ic) {
                    const double e = integrate_spline(s, half_x[ic - 1], half_x[ic], quad_points);
                    if (jh >= 1) sum[cell(ic, jh)] -= e;            // north edge of cell (ic, jh)
                    if (jh + 1 <= ncj) sum[cell(ic, jh + 1)] += e;  // south edge of cell (ic, jh+1)
                }
            }
        }
    }

    // Vertical edges: the transpose construction on Hy.
    std::vector<double> v1(static_cast<std::size_t>(n_x - 1) * n_y);
    std::vector<double> v2(v1.size());
    {
        std::vector<double> row(n_x);
        for (int j = 0; j < n_y; ++j) {
            for (int i = 0; i < n_x; ++i) row[i] = h1y[static_cast<std::size_t>(i) * n_y + j];
            const Spline s1 = fit(xs, row, xdeg);
            for (int i = 0; i < n_x; ++i) row[i] = h2y[static_cast<std::size_t>(i) * n_y + j];
            const Spline s2 = fit(xs, row, xdeg);
            for (int ih = 0; ih + 1 < n_x; ++ih) {
                v1[static_cast<std::size_t>(ih) * n_y + j] = s1(half_x[ih]);
                v2[static_cast<std::size_t>(ih) * n_y + j] = s2(half_x[ih]);
            }
        }
    }
    {
        std::vector<double> col(n_y);
        for (int ih = 0; ih + 1 < n_x; ++ih) {
            for (int pass = 0; pass < 2; ++pass) {
                const std::vector<double>& v = pass == 0 ? v1 : v2;
                std::vector<double>& sum = pass == 0 ? sum1 : sum2;
                for (int j = 0; j < n_y; ++j)
                    col[j] = v[static_cast<std::size_t>(ih) * n_y + j];
                const Spline s = fit(ys, col, ydeg);
                for (int jc = 1; jc <= ncj; ++jc) {
                    const double e = integrate_spline(s, half_y[jc - 1], half_y[jc], quad_points);
                    if (ih >= 1) sum[cell(ih, jc)] += e;            // east edge of cell (ih, jc)
                    if (ih + 1 <= nci) sum[cell(ih + 1, jc)] -= e;  // west edge of cell (ih+1, jc)
                }
            }
        }
    }

    // Source term and assembly.
    map.cells.reserve(sum1.size());
    for (int ic = 1; ic <= nci; ++ic) {
        const double x_lo = half_x[ic - 1], x_hi = half_x[ic];
        for (int jc = 1; jc <= ncj; ++jc) {
            const double y_lo = half_y[jc - 1], y_hi = half_y[jc];
            const double area = (x_hi - x_lo) * (y_hi - y_lo);
            const double f2 = gauss_legendre(
                [&](double x) {
                    return gauss_legendre(
                        [&](double y) {
                            const double f = spec.f(x, y);
                            return f * f;
                        },
                        y_lo, y_hi, quad_points);
                },
                x_lo, x_hi, quad_points);
            ResidualCell c;
            c.i = ic + 1;  // 1-based center node
            c.j = jc + 1;
            c.x_center = 0.5 * (x_lo + x_hi);
            c.y_center = 0.5 * (y_lo + y_hi);
            c.eps1 = std::abs(sum1[cell(ic, jc)] - f2) / area;
            c.eps2 = std::abs(sum2[cell(ic, jc)] - f2) / area;
            c.conserve = std::abs(sum2[cell(ic, jc)] - sum1[cell(ic, jc)]) / area;
            if (c.eps1 > map.max_eps1) {
                map.max_eps1 = c.eps1;
                map.peak1 = static_cast<int>(map.cells.size());
            }
            if (c.eps2 > map.max_eps2) {
                map.max_eps2 = c.eps2;
                map.peak2 = static_cast<int>(map.cells.size());
            }
            map.max_conserve = std::max(map.max_conserve, c.conserve);
            map.cells.push_back(c);
        }
    }
    if (!map.cells.empty()) {
        if (map.peak1 < 0) map.peak1 = 0;
        if (map.peak2 < 0) map.peak2 = 0;
    }
    return map;
}

namespace {

const ResidualCell& find_cell(const ResidualMap& map, const SolutionField& field, int i,
                              int j) {
    const int nci = field.n_x() - 2, ncj = field.n_y() - 2;
    if (i < 2 || i > field.n_x() - 1 || j < 2 || j > field.n_y() - 1 || nci < 1 || ncj < 1)
        throw std::out_of_range("cell index outside grid interior");
    return map.cells[static_cast<std::size_t>(i - 2) * ncj + (j - 2)];
}

}  // namespace

double cell_residual(const ProblemSpec& spec, const SolutionField& field, int i, int j,
                     int which, int quad_points) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("flux field selector must be 1 or 2");
    const ResidualMap map = residual_map(spec, field, quad_points);
    const ResidualCell& c = find_cell(map, field, i, j);
    return which == 1 ? c.eps1 : c.eps2;
}

double conservative_identity(const ProblemSpec& spec, const SolutionField& field, int i,
                             int j, int quad_points) {
    const ResidualMap map = residual_map(spec, field, quad_points);
    return find_cell(map, field, i, j).conserve;
}

}  // namespace hyperma
