#include "hyperma/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperma {

KnotSequence build_knots(const std::vector<double>& t, int degree) {
    const int n = degree;
    const int m = static_cast<int>(t.size());
    if (n < 1) throw std::invalid_argument("spline degree must be at least 1");
    if (m <= n) throw std::runtime_error("insufficient data for degree");
    for (int i = 0; i + 1 < m; ++i)
        if (t[i + 1] < t[i]) throw std::runtime_error("unsorted abscissae");

    KnotSequence xi;
    xi.reserve(m + n + 1);
    xi.insert(xi.end(), n + 1, t.front());
    // interior knot i (i = n+1 .. m-1) averages the n data points t_{i-n}..t_{i-1}
    for (int i = n + 1; i <= m - 1; ++i) {
        double acc = 0.0;
        for (int j = i - n; j <= i - 1; ++j) acc += t[j];
        xi.push_back(acc / n);
    }
    xi.insert(xi.end(), n + 1, t.back());
    return xi;
}

double basis(int k, int degree, double x, const KnotSequence& knots) {
    const int last = static_cast<int>(knots.size()) - 1;
    if (k < 0 || k + degree + 1 > last) throw std::invalid_argument("basis index out of range");
    if (degree == 0) {
        if (knots[k] <= x && x < knots[k + 1]) return 1.0;
        // close the last nonempty span so the recursion agrees with the
        // spline evaluator at the right end of the data interval
        if (x == knots.back() && knots[k] < knots[k + 1] && knots[k + 1] == knots.back())
            return 1.0;
        return 0.0;
    }
    double acc = 0.0;
    const double dl = knots[k + degree] - knots[k];
    if (dl > 0.0) acc += (x - knots[k]) / dl * basis(k, degree - 1, x, knots);
    const double dr = knots[k + degree + 1] - knots[k + 1];
    if (dr > 0.0) acc += (knots[k + degree + 1] - x) / dr * basis(k + 1, degree - 1, x, knots);
    return acc;
}

namespace detail {

int find_span(const KnotSequence& knots, int degree, int n_coeff, double x) {
    // spans with support live at indices degree .. n_coeff-1; outside that
    // range (or outside the data interval) we clamp and let the boundary
    // polynomial piece extrapolate
    int lo = degree, hi = n_coeff - 1;
    if (x >= knots[hi]) return hi;
    if (x <= knots[lo]) return lo;
    auto it = std::upper_bound(knots.begin() + lo, knots.begin() + hi + 1, x);
    int k = static_cast<int>(it - knots.begin()) - 1;
    return std::clamp(k, lo, hi);
}

void basis_row(const KnotSequence& knots, int span, int degree, double x, double* out) {
    out[0] = 1.0;
    double left[16], right[16];
    for (int j = 1; j <= degree; ++j) {
        left[j] = x - knots[span + 1 - j];
        right[j] = knots[span + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double tmp = out[r] / (right[r + 1] + left[j - r]);
            out[r] = saved + right[r + 1] * tmp;
            saved = left[j - r] * tmp;
        }
        out[j] = saved;
    }
}

std::vector<double> solve_banded(int n, int kl, int ku, std::vector<double>& ab,
                                 std::vector<double> rhs) {
    // storage: ab[(kl+ku+i-j)*n + j] holds A(i,j); the kl rows above the
    // original band are fill space for the pivoting row swaps
    auto at = [&](int i, int j) -> double& {
        return ab[static_cast<size_t>(kl + ku + i - j) * n + j];
    };

    double scale = 0.0;
    for (double v : ab) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw std::runtime_error("collocation singular");

    for (int j = 0; j < n; ++j) {
        int p = j;
        double best = std::abs(at(j, j));
        const int imax = std::min(n - 1, j + kl);
        for (int i = j + 1; i <= imax; ++i) {
            const double v = std::abs(at(i, j));
            if (v > best) { best = v; p = i; }
        }
        if (best < 1e-13 * scale) throw std::runtime_error("collocation singular");

        const int cmax = std::min(n - 1, j + kl + ku);
        if (p != j) {
            for (int c = j; c <= cmax; ++c) std::swap(at(j, c), at(p, c));
            std::swap(rhs[j], rhs[p]);
        }
        const double pivval = at(j, j);
        for (int i = j + 1; i <= imax; ++i) {
            const double mult = at(i, j) / pivval;
            if (mult == 0.0) continue;
            for (int c = j + 1; c <= cmax; ++c) at(i, c) -= mult * at(j, c);
            rhs[i] -= mult * rhs[j];
        }
    }

    for (int j = n - 1; j >= 0; --j) {
        double acc = rhs[j];
        const int cmax = std::min(n - 1, j + kl + ku);
        for (int c = j + 1; c <= cmax; ++c) acc -= at(j, c) * rhs[c];
        rhs[j] = acc / at(j, j);
    }
    return rhs;
}

}  // namespace detail

Spline::Spline(int degree, KnotSequence knots, std::vector<double> coeff)
    : degree_(degree), knots_(std::move(knots)), coeff_(std::move(coeff)) {}

double Spline::operator()(double x) const {
    const int n = degree_;
    const int m = static_cast<int>(coeff_.size());
    const int k = detail::find_span(knots_, n, m, x);

    // de Boor on the n+1 coefficients supported on span k
    double d[16];
    for (int j = 0; j <= n; ++j) d[j] = coeff_[k - n + j];
    for (int r = 1; r <= n; ++r) {
        for (int j = n; j >= r; --j) {
            const double den = knots_[k + 1 + j - r] - knots_[k - n + j];
            const double alpha = (x - knots_[k - n + j]) / den;
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
        }
    }
    return d[n];
}

Spline Spline::derivative() const {
    const int n = degree_;
    const int m = static_cast<int>(coeff_.size());
    if (n == 0) {
        // derivative of a step function: zero between the (collapsed) knots
        KnotSequence nk(knots_);
        return Spline(0, std::move(nk), std::vector<double>(m, 0.0));
    }
    KnotSequence nk(knots_.begin() + 1, knots_.end() - 1);
    std::vector<double> dc(m - 1);
    for (int i = 0; i < m - 1; ++i) {
        const double den = knots_[i + n + 1] - knots_[i + 1];
        dc[i] = den > 0.0 ? n * (coeff_[i + 1] - coeff_[i]) / den : 0.0;
    }
    return Spline(n - 1, std::move(nk), std::move(dc));
}

Spline fit(const std::vector<double>& t_in, const std::vector<double>& g_in, int degree) {
    if (t_in.size() != g_in.size()) throw std::invalid_argument("abscissae/ordinate size mismatch");
    if (t_in.empty()) throw std::runtime_error("insufficient data for degree");
    for (size_t i = 0; i + 1 < t_in.size(); ++i)
        if (t_in[i + 1] < t_in[i]) throw std::runtime_error("unsorted abscissae");

    // collapse near-coincident abscissae (keep the first ordinate); the
    // collocation matrix would otherwise be singular
    const double range = t_in.back() - t_in.front();
    const double tol = 1e-12 * (range > 0.0 ? range : 1.0);
    std::vector<double> t, g;
    t.reserve(t_in.size());
    g.reserve(t_in.size());
    for (size_t i = 0; i < t_in.size(); ++i) {
        if (!t.empty() && t_in[i] - t.back() < tol) continue;
        t.push_back(t_in[i]);
        g.push_back(g_in[i]);
    }

    const int m = static_cast<int>(t.size());
    const int n = degree;
    if (degree > 15) throw std::invalid_argument("spline degree too large");
    if (m <= n) throw std::runtime_error("insufficient data for degree");

    KnotSequence xi = build_knots(t, n);

    // banded collocation A(j,k) = b_k^n(t_j); bandwidth n on either side
    const int kl = n, ku = n;
    std::vector<double> ab(static_cast<size_t>(2 * kl + ku + 1) * m, 0.0);
    double row[16];
    for (int r = 0; r < m; ++r) {
        const int span = detail::find_span(xi, n, m, t[r]);
        detail::basis_row(xi, span, n, t[r], row);
        for (int j = 0; j <= n; ++j) {
            const int col = span - n + j;
            ab[static_cast<size_t>(kl + ku + r - col) * m + col] = row[j];
        }
    }
    std::vector<double> c = detail::solve_banded(m, kl, ku, ab, g);
    return Spline(n, std::move(xi), std::move(c));
}

}  // namespace hyperma
