#pragma once

#include <cstddef>
#include <vector>

namespace amice {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Laguerre rule for int_0^inf f(u) e^-u du; exact for
// polynomials of degree < 2n.
QuadratureRule gauss_laguerre(std::size_t n);

// Uniform rule on [0, 2 pi): exact for trigonometric polynomials of degree < n.
QuadratureRule periodic_trapezoid(std::size_t n);

// Pairwise sum, independent of evaluation order elsewhere.
double pairwise_sum(const std::vector<double>& values);

}  // namespace amice
