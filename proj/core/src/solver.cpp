#include "hyperma/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "hyperma/boundary.hpp"
#include "hyperma/bspline.hpp"

namespace hyperma {

std::vector<double> SolutionField::xs() const {
    std::vector<double> out(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) out[i] = lines[i].x;
    return out;
}

double adaptive_hx(const std::vector<double>& a, const std::vector<double>& b,
                   double h_y, double gamma) {
    double m = 1.0;
    for (double v : a) m = std::min(m, 1.0 / std::abs(v));
    for (double v : b) m = std::min(m, 1.0 / std::abs(v));
    return gamma * h_y * m;
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i)
        t[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (n > 0) {
        t.front() = lo;
        t.back() = hi;
    }
    return t;
}

// Pre-fit every sampled boundary curve once so the march does not refit
// splines on each regrid.
ProblemSpec prepared(const ProblemSpec& spec) {
    ProblemSpec out = spec;
    out.west.u = materialize_curve(spec.west.u, spec.domain.y_min, spec.domain.y_max);
    out.west.w = materialize_curve(spec.west.w, spec.domain.y_min, spec.domain.y_max);
    for (EdgeData* ed : {&out.south, &out.north, &out.east})
        for (EdgeSegment& seg : ed->segments)
            if (seg.cauchy) {
                seg.cauchy->u = materialize_curve(seg.cauchy->u, seg.lo, seg.hi);
                seg.cauchy->w = materialize_curve(seg.cauchy->w, seg.lo, seg.hi);
            }
    return out;
}

[[noreturn]] void throw_diverged(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    throw std::runtime_error(std::string("solver diverged at x = ") + buf);
}

bool all_finite(const GridLine& line) {
    for (const auto* v : {&line.u, &line.p, &line.q, &line.a, &line.b})
        for (double x : *v)
            if (!std::isfinite(x)) return false;
    return true;
}

void overwrite_slopes(GridLine& line, const ExactSolution& ex) {
    for (std::size_t j = 0; j < line.y.size(); ++j) {
        line.a[j] = ex.a(line.x, line.y[j]);
        line.b[j] = ex.b(line.x, line.y[j]);
    }
}

}  // namespace

SolutionField solve(const ProblemSpec& spec, int n_y, Method method, int spline_order,
                    double gamma, const ExactSolution* frozen_slopes) {
    if (spline_order < 2) throw std::runtime_error("spline order must be at least 2");
    if (n_y < 2 * spline_order + 3)
        throw std::runtime_error("n_y too small for spline order (need at least 2*order + 3)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::runtime_error("gamma out of range (0, 1)");

    const auto t0 = std::chrono::steady_clock::now();
    const Domain& d = spec.domain;
    const ProblemSpec prep = prepared(spec);
    const std::vector<double> ys = linspace(d.y_min, d.y_max, n_y);
    const double h_y = (d.y_max - d.y_min) / static_cast<double>(n_y - 1);

    StepContext ctx;
    ctx.spec = &prep;
    ctx.spline_order = spline_order;
    const bool frozen = frozen_slopes && *frozen_slopes;
    if (frozen) ctx.frozen_slopes = frozen_slopes;

    SolutionField field;
    field.case_name = spec.name;
    field.method = method;
    field.spline_order = spline_order;
    field.gamma = gamma;
    field.y = ys;

    {
        const StripExtension strip = extend_vertical_strip(
            prep.west.u, prep.west.w,
            [&prep, &d](double y) { return prep.f(d.x_min, y); }, ys);
        GridLine first;
        first.x = d.x_min;
        first.y = ys;
        first.u = strip.u;
        first.p = strip.p;
        first.q = strip.q;
        first.a = strip.a;
        first.b = strip.b;
        if (frozen) overwrite_slopes(first, *frozen_slopes);
        field.lines.push_back(std::move(first));
    }

    const double width = d.x_max - d.x_min;
    const double land_tol = 1e-12 * std::max(width, 1.0);
    const std::size_t max_lines = 50 * static_cast<std::size_t>(n_y) + 1000;

    while (field.lines.back().x < d.x_max - land_tol) {
        const GridLine& cur = field.lines.back();
        double h = adaptive_hx(cur.a, cur.b, h_y, gamma);
        if (!(h > 0.0) || !std::isfinite(h)) throw_diverged(cur.x);
        bool landing = false;
        if (cur.x + h >= d.x_max - land_tol) {
            h = d.x_max - cur.x;
            landing = true;
        }
        const StepResult fronts = step(cur, h, method, ctx);
        GridLine next = regrid(fronts.alpha, fronts.beta, ys, ctx);
        if (landing) next.x = d.x_max;
        if (!all_finite(next)) throw_diverged(next.x);
        if (frozen) overwrite_slopes(next, *frozen_slopes);
        field.lines.push_back(std::move(next));
        if (field.lines.size() > max_lines) throw_diverged(field.lines.back().x);
    }

    field.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return field;
}

SolutionField exact_field(const ProblemSpec& spec, int n_y, int n_x) {
    if (!spec.has_exact()) throw std::runtime_error("exact solution unavailable");
    const Domain& d = spec.domain;
    const double h_y = (d.y_max - d.y_min) / static_cast<double>(n_y - 1);
    if (n_x <= 0) {
        const double width = d.x_max - d.x_min;
        n_x = width > 0.0 ? static_cast<int>(std::ceil(width / (0.95 * h_y))) + 1 : 1;
    }
    SolutionField field;
    field.case_name = spec.name;
    field.y = linspace(d.y_min, d.y_max, n_y);
    const std::vector<double> xs =
        n_x > 1 ? linspace(d.x_min, d.x_max, n_x) : std::vector<double>{d.x_min};
    const ExactSolution& ex = spec.exact;
    for (double x : xs) {
        GridLine line;
        line.x = x;
        line.y = field.y;
        line.u.resize(n_y);
        line.p.resize(n_y);
        line.q.resize(n_y);
        line.a.resize(n_y);
        line.b.resize(n_y);
        for (int j = 0; j < n_y; ++j) {
            const double y = field.y[j];
            line.u[j] = ex.u(x, y);
            line.p[j] = ex.p(x, y);
            line.q[j] = ex.q(x, y);
            line.a[j] = ex.a(x, y);
            line.b[j] = ex.b(x, y);
        }
        field.lines.push_back(std::move(line));
    }
    return field;
}

Polyline trace_characteristic(const SolutionField& field, double x0, double y0,
                              Family family) {
    const double xl = field.lines.front().x, xr = field.lines.back().x;
    const double yl = field.y.front(), yr = field.y.back();
    const double xtol = 1e-12 * std::max(xr - xl, 1.0);
    const double ytol = 1e-12 * std::max(yr - yl, 1.0);
    if (x0 < xl - xtol || x0 > xr + xtol || y0 < yl - ytol || y0 > yr + ytol)
        throw std::runtime_error("trace start outside domain");
    x0 = std::clamp(x0, xl, xr);
    y0 = std::clamp(y0, yl, yr);

    const int n_x = field.n_x();
    std::vector<std::unique_ptr<Spline>> cache(n_x);
    auto line_slope = [&](int i) -> const Spline& {
        if (!cache[i]) {
            const GridLine& ln = field.lines[i];
            const std::vector<double>& s = (family == Family::Alpha) ? ln.a : ln.b;
            cache[i] = std::make_unique<Spline>(fit(field.y, s, std::min<int>(3, field.n_y() - 1)));
        }
        return *cache[i];
    };
    auto slope_at = [&](double x, double y) {
        if (n_x == 1) return line_slope(0)(y);
        int i = static_cast<int>(std::upper_bound(field.lines.begin(), field.lines.end(), x,
                                                  [](double v, const GridLine& ln) {
                                                      return v < ln.x;
                                                  }) -
                                 field.lines.begin()) -
                1;
        i = std::clamp(i, 0, n_x - 2);
        const double x_lo = field.lines[i].x, x_hi = field.lines[i + 1].x;
        const double w = std::clamp((x - x_lo) / (x_hi - x_lo), 0.0, 1.0);
        return (1.0 - w) * line_slope(i)(y) + w * line_slope(i + 1)(y);
    };
    auto rk4 = [&](double x, double y, double h) {
        const double k1 = slope_at(x, y);
        const double k2 = slope_at(x + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = slope_at(x + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = slope_at(x + h, y + h * k3);
        return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    // March from (x0, y0) toward one domain side, stepping line to line and
    // shrinking the final step if the path exits through a y-edge.
    auto march = [&](int dir) {
        Polyline part;
        double x = x0, y = y0;
        const double x_end = dir > 0 ? xr : xl;
        while (dir * (x_end - x) > xtol) {
            // next march abscissa: the adjacent field line (or the domain edge)
            double x_next = x_end;
            if (dir > 0) {
                auto it = std::upper_bound(field.lines.begin(), field.lines.end(), x + xtol,
                                           [](double v, const GridLine& ln) { return v < ln.x; });
                if (it != field.lines.end()) x_next = std::min(x_next, it->x);
            } else {
                auto it = std::lower_bound(field.lines.begin(), field.lines.end(), x - xtol,
                                           [](const GridLine& ln, double v) { return ln.x < v; });
                if (it != field.lines.begin()) x_next = std::max(x_next, std::prev(it)->x);
            }
            const double h_full = x_next - x;
            double y_next = rk4(x, y, h_full);
            if (y_next < yl - ytol || y_next > yr + ytol) {
                // bisect for the step length that lands on the y-edge
                double lo = 0.0, hi = h_full;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double ym = rk4(x, y, mid);
                    if (ym < yl - ytol || ym > yr + ytol)
                        hi = mid;
                    else
                        lo = mid;
                }
                x += lo;
                y = std::clamp(rk4(x - lo, y, lo), yl, yr);
                part.x.push_back(x);
                part.y.push_back(y);
                break;
            }
            x = x_next;
            y = std::clamp(y_next, yl, yr);
            part.x.push_back(x);
            part.y.push_back(y);
        }
        return part;
    };

    const Polyline fwd = march(+1);
    const Polyline bwd = march(-1);
    Polyline out;
    out.x.reserve(bwd.x.size() + 1 + fwd.x.size());
    out.y.reserve(out.x.capacity());
    for (std::size_t i = bwd.x.size(); i-- > 0;) {
        out.x.push_back(bwd.x[i]);
        out.y.push_back(bwd.y[i]);
    }
    out.x.push_back(x0);
    out.y.push_back(y0);
    out.x.insert(out.x.end(), fwd.x.begin(), fwd.x.end());
    out.y.insert(out.y.end(), fwd.y.begin(), fwd.y.end());
    return out;
}

}  // namespace hyperma
