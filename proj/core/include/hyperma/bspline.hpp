#pragma once

#include <vector>

namespace hyperma {

// Non-decreasing knot abscissae xi_0 <= ... <= xi_N.
using KnotSequence = std::vector<double>;

// Clamped knot sequence for degree-n interpolation at sorted abscissae t:
// n+1 copies of each endpoint, and the interior knots are running averages of
// n consecutive data points (the "averaging" knot choice, which keeps the
// collocation matrix square and satisfies the Schoenberg-Whitney conditions).
//
// Throws "insufficient data for degree" when there are no more data points
// than the degree, and "unsorted abscissae" when t decreases anywhere.
KnotSequence build_knots(const std::vector<double>& t, int degree);

// Single B-spline basis function b_k^n evaluated at x by the Cox-de-Boor
// recursion, with the usual 0/0 -> 0 convention for zero-width spans.
// Requires 0 <= k and k+n+1 <= last knot index ("basis index out of range").
double basis(int k, int degree, double x, const KnotSequence& knots);

// One-dimensional interpolating B-spline: degree, clamped knots and the
// coefficient vector solved from the banded collocation system.
class Spline {
public:
    Spline() = default;

    double operator()(double x) const;  // evaluation; extrapolates outside the data range
    Spline derivative() const;

    int degree() const { return degree_; }
    const KnotSequence& knots() const { return knots_; }
    const std::vector<double>& coefficients() const { return coeff_; }

    Spline(int degree, KnotSequence knots, std::vector<double> coeff);

private:
    int degree_ = 0;
    KnotSequence knots_;
    std::vector<double> coeff_;
};

// Interpolating spline of the given degree through (t_j, g_j). Abscissae
// closer together than 1e-12 of the data range are collapsed to one node
// (first ordinate kept) before fitting; the collocation system is solved by
// banded Gaussian elimination with partial pivoting.
Spline fit(const std::vector<double>& t, const std::vector<double>& g, int degree);

inline double eval(const Spline& s, double x) { return s(x); }

namespace detail {

// Row-major band solver used by the collocation fit: kl sub- and ku
// superdiagonals, partial pivoting with the usual kl extra fill rows.
// Solves in place and returns the solution; throws "collocation singular"
// on a vanishing pivot.
std::vector<double> solve_banded(int n, int kl, int ku,
                                 std::vector<double>& ab,  // (2*kl+ku+1) x n, ab[(kl+ku+i-j)*n + j] = A(i,j)
                                 std::vector<double> rhs);

// All n+1 basis values that are non-zero on the span [knots[span], knots[span+1]).
void basis_row(const KnotSequence& knots, int span, int degree, double x, double* out);

// Index k of the span containing x, clamped to the non-empty spans of the
// clamped sequence so out-of-range x picks the boundary polynomial piece.
int find_span(const KnotSequence& knots, int degree, int n_coeff, double x);

}  // namespace detail

}  // namespace hyperma
