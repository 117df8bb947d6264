#include "hyperma/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperma {

const GaussRule& gauss_rule(int n) {
    static const double s35 = std::sqrt(3.0 / 5.0);
    static const double s13 = 1.0 / std::sqrt(3.0);
    static const double n4a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    static const double n4b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    static const double w4a = (18.0 + std::sqrt(30.0)) / 36.0;
    static const double w4b = (18.0 - std::sqrt(30.0)) / 36.0;
    static const double n5a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    static const double n5b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    static const double w5a = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    static const double w5b = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    static const GaussRule rules[5] = {
        {{0.0}, {2.0}},
        {{-s13, s13}, {1.0, 1.0}},
        {{-s35, 0.0, s35}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}},
        {{-n4b, -n4a, n4a, n4b}, {w4b, w4a, w4a, w4b}},
        {{-n5b, -n5a, 0.0, n5a, n5b}, {w5b, w5a, 128.0 / 225.0, w5a, w5b}},
    };
    if (n < 1 || n > 5) throw std::invalid_argument("unsupported quadrature point count");
    return rules[n - 1];
}

double gauss_legendre(const std::function<double(double)>& g, double z1, double z2, int n) {
    if (!(z1 < z2)) throw std::invalid_argument("invalid integration interval");
    const GaussRule& rule = gauss_rule(n);
    const double mid = 0.5 * (z1 + z2);
    const double half = 0.5 * (z2 - z1);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * g(mid + half * rule.nodes[i]);
    return half * acc;
}

}  // namespace hyperma
