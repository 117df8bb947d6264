#pragma once

#include <functional>
#include <vector>

namespace hyperma {

// Gauss-Legendre nodes and weights on [-1, 1] for n in {1..5}; closed-form
// constants, exact for polynomials of degree <= 2n-1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_rule(int n);

// Integral of g over [z1, z2] by the affine-mapped n-point rule; default n = 3.
double gauss_legendre(const std::function<double(double)>& g, double z1, double z2, int n = 3);

}  // namespace hyperma
