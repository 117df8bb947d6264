#include "hyperma/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hyperma/boundary.hpp"
#include "hyperma/bspline.hpp"

namespace hyperma {

Method method_from_string(const std::string& name) {
    if (name == "euler") return Method::Euler;
    if (name == "modified-euler" || name == "me") return Method::ModifiedEuler;
    if (name == "rk4") return Method::RK4;
    throw std::runtime_error("unknown method: " + name);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Euler: return "euler";
        case Method::ModifiedEuler: return "modified-euler";
        case Method::RK4: return "rk4";
    }
    return "?";
}

std::array<double, 6> rhs_alpha(const std::array<double, 6>& v, double a_here,
                                double f, double f_x, double f_y) {
    const double p = v[3], q = v[4], b = v[5];
    return {1.0,
            a_here,
            p + a_here * q,
            -a_here * f,
            f,
            (b - a_here) / (2.0 * f) * (f_x + b * f_y)};
}

std::array<double, 6> rhs_beta(const std::array<double, 6>& v, double b_here,
                               double f, double f_x, double f_y) {
    const double p = v[3], q = v[4], a = v[5];
    return {1.0,
            b_here,
            p + b_here * q,
            b_here * f,
            -f,
            (a - b_here) / (2.0 * f) * (f_x + a * f_y)};
}

namespace {

using Rates = std::vector<std::array<double, 6>>;

// View one family's state on a grid line as a front (the front carries the
// OTHER family's slope).
CharFront line_front(const GridLine& line, Family fam) {
    CharFront fr;
    fr.family = fam;
    fr.x = line.x;
    fr.y = line.y;
    fr.u = line.u;
    fr.p = line.p;
    fr.q = line.q;
    fr.slope = (fam == Family::Alpha) ? line.b : line.a;
    return fr;
}

Rates eval_rates(const CharFront& fr, const std::vector<double>& own_slope,
                 const ProblemSpec& spec) {
    const std::size_t n = fr.y.size();
    Rates g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double f = spec.f(fr.x, fr.y[j]);
        const double fx = spec.f_x(fr.x, fr.y[j]);
        const double fy = spec.f_y(fr.x, fr.y[j]);
        const std::array<double, 6> v = {fr.x, fr.y[j], fr.u[j], fr.p[j], fr.q[j], fr.slope[j]};
        g[j] = (fr.family == Family::Alpha) ? rhs_alpha(v, own_slope[j], f, fx, fy)
                                            : rhs_beta(v, own_slope[j], f, fx, fy);
    }
    return g;
}

CharFront advance(const CharFront& base, const Rates& g, double h) {
    CharFront out = base;
    out.x = base.x + h;  // g[0] == 1 exactly
    for (std::size_t j = 0; j < base.y.size(); ++j) {
        out.y[j] = base.y[j] + h * g[j][1];
        out.u[j] = base.u[j] + h * g[j][2];
        out.p[j] = base.p[j] + h * g[j][3];
        out.q[j] = base.q[j] + h * g[j][4];
        out.slope[j] = base.slope[j] + h * g[j][5];
    }
    return out;
}

// The advanced family's own slope at its stage nodes: interpolated across
// from the other family's same-stage front, or (testing hook) the frozen
// closed form.
std::vector<double> own_slopes(const CharFront& self, const CharFront& other,
                               const StepContext& ctx) {
    if (ctx.frozen_slopes && *ctx.frozen_slopes) {
        std::vector<double> s(self.y.size());
        const auto& fn = (self.family == Family::Alpha) ? ctx.frozen_slopes->a
                                                        : ctx.frozen_slopes->b;
        for (std::size_t j = 0; j < s.size(); ++j) s[j] = fn(self.x, self.y[j]);
        return s;
    }
    return cross_interpolate(other, self.y, ctx.spline_order);
}

const ProblemSpec& require_spec(const StepContext& ctx) {
    if (!ctx.spec) throw std::logic_error("step context has no problem attached");
    return *ctx.spec;
}

struct SortedFront {
    std::vector<double> y, u, p, q, slope;
    bool touched = false;  // reordered or deduplicated
};

SortedFront sort_front(const CharFront& fr, double dedup_tol) {
    const std::size_t n = fr.y.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return fr.y[i] < fr.y[j]; });
    SortedFront out;
    out.y.reserve(n);
    out.u.reserve(n);
    out.p.reserve(n);
    out.q.reserve(n);
    out.slope.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = idx[k];
        if (i != k) out.touched = true;
        if (!out.y.empty() && std::abs(fr.y[i] - out.y.back()) < dedup_tol) {
            out.touched = true;  // coincident nodes collapse to the first
            continue;
        }
        out.y.push_back(fr.y[i]);
        out.u.push_back(fr.u[i]);
        out.p.push_back(fr.p[i]);
        out.q.push_back(fr.q[i]);
        out.slope.push_back(fr.slope[i]);
    }
    return out;
}

int fit_degree(std::size_t n_nodes, int spline_order) {
    int deg = std::min<int>(spline_order - 1, static_cast<int>(n_nodes) - 1);
    return std::max(deg, 1);
}

}  // namespace

std::vector<double> cross_interpolate(const CharFront& source,
                                      const std::vector<double>& target_ys,
                                      int spline_order) {
    const std::size_t n = source.y.size();
    if (n == 0) throw std::runtime_error("cross interpolation from empty front");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return source.y[i] < source.y[j]; });
    const double range = source.y[idx.back()] - source.y[idx.front()];
    const double tol = 1e-12 * range;
    std::vector<double> ys, ss;
    ys.reserve(n);
    ss.reserve(n);
    for (std::size_t i : idx) {
        if (!ys.empty() && std::abs(source.y[i] - ys.back()) < tol) continue;
        ys.push_back(source.y[i]);
        ss.push_back(source.slope[i]);
    }
    if (ys.size() < 2) return std::vector<double>(target_ys.size(), ss.front());
    const Spline s = fit(ys, ss, fit_degree(ys.size(), spline_order));
    std::vector<double> out(target_ys.size());
    for (std::size_t j = 0; j < target_ys.size(); ++j) out[j] = s(target_ys[j]);
    return out;
}

StepResult euler_step(const GridLine& line, double h_x, const StepContext& ctx) {
    const ProblemSpec& spec = require_spec(ctx);
    const CharFront a0 = line_front(line, Family::Alpha);
    const CharFront b0 = line_front(line, Family::Beta);
    const Rates ka = eval_rates(a0, line.a, spec);
    const Rates kb = eval_rates(b0, line.b, spec);
    return {advance(a0, ka, h_x), advance(b0, kb, h_x)};
}

StepResult modified_euler_step(const GridLine& line, double h_x, const StepContext& ctx) {
    const ProblemSpec& spec = require_spec(ctx);
    const CharFront a0 = line_front(line, Family::Alpha);
    const CharFront b0 = line_front(line, Family::Beta);
    const Rates k1a = eval_rates(a0, line.a, spec);
    const Rates k1b = eval_rates(b0, line.b, spec);
    const CharFront ah = advance(a0, k1a, 0.5 * h_x);
    const CharFront bh = advance(b0, k1b, 0.5 * h_x);
    const Rates k2a = eval_rates(ah, own_slopes(ah, bh, ctx), spec);
    const Rates k2b = eval_rates(bh, own_slopes(bh, ah, ctx), spec);
    return {advance(a0, k2a, h_x), advance(b0, k2b, h_x)};
}

StepResult rk4_step(const GridLine& line, double h_x, const StepContext& ctx) {
    const ProblemSpec& spec = require_spec(ctx);
    const CharFront a0 = line_front(line, Family::Alpha);
    const CharFront b0 = line_front(line, Family::Beta);
    const Rates k1a = eval_rates(a0, line.a, spec);
    const Rates k1b = eval_rates(b0, line.b, spec);

    const CharFront a2 = advance(a0, k1a, 0.5 * h_x);
    const CharFront b2 = advance(b0, k1b, 0.5 * h_x);
    const Rates k2a = eval_rates(a2, own_slopes(a2, b2, ctx), spec);
    const Rates k2b = eval_rates(b2, own_slopes(b2, a2, ctx), spec);

    const CharFront a3 = advance(a0, k2a, 0.5 * h_x);
    const CharFront b3 = advance(b0, k2b, 0.5 * h_x);
    const Rates k3a = eval_rates(a3, own_slopes(a3, b3, ctx), spec);
    const Rates k3b = eval_rates(b3, own_slopes(b3, a3, ctx), spec);

    const CharFront a4 = advance(a0, k3a, h_x);
    const CharFront b4 = advance(b0, k3b, h_x);
    const Rates k4a = eval_rates(a4, own_slopes(a4, b4, ctx), spec);
    const Rates k4b = eval_rates(b4, own_slopes(b4, a4, ctx), spec);

    auto combine = [](const Rates& k1, const Rates& k2, const Rates& k3, const Rates& k4) {
        Rates g(k1.size());
        for (std::size_t j = 0; j < k1.size(); ++j)
            for (int c = 0; c < 6; ++c)
                g[j][c] = (k1[j][c] + 2.0 * k2[j][c] + 2.0 * k3[j][c] + k4[j][c]) / 6.0;
        return g;
    };
    return {advance(a0, combine(k1a, k2a, k3a, k4a), h_x),
            advance(b0, combine(k1b, k2b, k3b, k4b), h_x)};
}

StepResult step(const GridLine& line, double h_x, Method method, const StepContext& ctx) {
    switch (method) {
        case Method::Euler: return euler_step(line, h_x, ctx);
        case Method::ModifiedEuler: return modified_euler_step(line, h_x, ctx);
        case Method::RK4: return rk4_step(line, h_x, ctx);
    }
    throw std::logic_error("unreachable method");
}

GridLine regrid(const CharFront& alpha, const CharFront& beta,
                const std::vector<double>& grid_ys, const StepContext& ctx) {
    const ProblemSpec& spec = require_spec(ctx);
    const std::size_t n = grid_ys.size();
    if (n < 2) throw std::runtime_error("regrid needs at least two grid nodes");
    const double h_y = (grid_ys.back() - grid_ys.front()) / static_cast<double>(n - 1);
    const double x = alpha.x;

    const SortedFront sa = sort_front(alpha, 1e-12 * h_y);
    const SortedFront sb = sort_front(beta, 1e-12 * h_y);

    const int dega = fit_degree(sa.y.size(), ctx.spline_order);
    const int degb = fit_degree(sb.y.size(), ctx.spline_order);
    const Spline au = fit(sa.y, sa.u, dega), ap = fit(sa.y, sa.p, dega),
                 aq = fit(sa.y, sa.q, dega), ab = fit(sa.y, sa.slope, dega);
    const Spline bu = fit(sb.y, sb.u, degb), bp = fit(sb.y, sb.p, degb),
                 bq = fit(sb.y, sb.q, degb), ba = fit(sb.y, sb.slope, degb);

    const double cov_tol = 1e-9 * h_y;
    auto covered = [cov_tol](const SortedFront& s, double y) {
        return y >= s.y.front() - cov_tol && y <= s.y.back() + cov_tol;
    };

    GridLine out;
    out.x = x;
    out.y = grid_ys;
    out.u.resize(n);
    out.p.resize(n);
    out.q.resize(n);
    out.a.resize(n);
    out.b.resize(n);
    out.crossing = sa.touched || sb.touched;

    // Boundary data for the two y-edges at this x (south for j = 0, north
    // for j = n-1): Cauchy data supplies u, p, q and both slopes through the
    // one-sided strip construction; a slope prescription supplies just its
    // own family's slope.
    struct EdgeSupply {
        bool has_cauchy = false;
        double u = 0, p = 0, q = 0, a = 0, b = 0;
        char slope_family = 0;
        double slope_value = 0;
    };
    auto edge_supply = [&](const EdgeData& ed, double y_edge) {
        EdgeSupply es;
        const EdgeSegment* seg = ed.segment_at(x);
        if (!seg) return es;
        if (seg->cauchy) {
            const CurveData uc = materialize_curve(seg->cauchy->u, seg->lo, seg->hi);
            const CurveData wc = materialize_curve(seg->cauchy->w, seg->lo, seg->hi);
            es.has_cauchy = true;
            es.u = uc.value(x);
            es.p = uc.d1(x);
            es.q = wc.value(x);
            const double r = uc.d2(x);
            const double s = wc.d1(x);
            const double f = spec.f(x, y_edge);
            es.a = -r / (s + f);
            es.b = -r / (s - f);
        } else if (seg->slope) {
            es.slope_family = seg->slope->family;
            es.slope_value = seg->slope->slope(x);
        }
        return es;
    };

    for (std::size_t j = 0; j < n; ++j) {
        const double y = grid_ys[j];
        const bool ca = covered(sa, y);
        const bool cb = covered(sb, y);

        EdgeSupply es;
        if (j == 0)
            es = edge_supply(spec.south, y);
        else if (j + 1 == n)
            es = edge_supply(spec.north, y);

        // a rides on the beta front, b on the alpha front; boundary data
        // takes over at an edge node its carrier did not reach, and plain
        // spline extrapolation covers the rest.
        if (!cb && es.has_cauchy)
            out.a[j] = es.a;
        else if (!cb && es.slope_family == 'a')
            out.a[j] = es.slope_value;
        else
            out.a[j] = ba(y);

        if (!ca && es.has_cauchy)
            out.b[j] = es.b;
        else if (!ca && es.slope_family == 'b')
            out.b[j] = es.slope_value;
        else
            out.b[j] = ab(y);

        if (ca && cb) {
            out.u[j] = 0.5 * (au(y) + bu(y));
            out.p[j] = 0.5 * (ap(y) + bp(y));
            out.q[j] = 0.5 * (aq(y) + bq(y));
        } else if (ca) {
            out.u[j] = au(y);
            out.p[j] = ap(y);
            out.q[j] = aq(y);
        } else if (cb) {
            out.u[j] = bu(y);
            out.p[j] = bp(y);
            out.q[j] = bq(y);
        } else if (es.has_cauchy) {
            out.u[j] = es.u;
            out.p[j] = es.p;
            out.q[j] = es.q;
        } else {
            // Neither front reached this node and no full boundary data
            // here. When a family is classified as leaving at this edge
            // node (outward slope sign), its front end misses the node only
            // by the slope's lag within the last step — e.g. right after a
            // prescription change flips the sign — so extrapolating that
            // front is consistent. With no leaving family the prescription
            // set is genuinely incomplete.
            const bool south_edge = (j == 0), north_edge = (j + 1 == n);
            const Spline *xu = nullptr, *xp = nullptr, *xq = nullptr;
            double best = std::numeric_limits<double>::infinity();
            auto consider = [&](bool leaving, const SortedFront& sf, const Spline& su,
                                const Spline& sp, const Spline& sq) {
                if (!leaving) return;
                const double dist = south_edge ? sf.y.front() - y : y - sf.y.back();
                if (dist < best) {
                    best = dist;
                    xu = &su;
                    xp = &sp;
                    xq = &sq;
                }
            };
            if (south_edge || north_edge) {
                const double sgn = north_edge ? 1.0 : -1.0;
                consider(sgn * out.a[j] >= 0.0, sa, au, ap, aq);
                consider(sgn * out.b[j] >= 0.0, sb, bu, bp, bq);
            }
            if (!xu) throw std::runtime_error("missing boundary condition at edge");
            out.u[j] = (*xu)(y);
            out.p[j] = (*xp)(y);
            out.q[j] = (*xq)(y);
        }
    }
    return out;
}

}  // namespace hyperma
