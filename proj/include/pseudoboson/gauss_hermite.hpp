#pragma once

#include <vector>

namespace pseudoboson {

// Nodes and weights for \int_R e^{-x^2} f(x) dx ~= sum w_i f(x_i),
// exact for polynomials of degree <= 2n-1.
struct GaussHermiteRule {
    std::vector<double> x, w;
};

GaussHermiteRule gauss_hermite_rule(int n);

}  // namespace pseudoboson
