#include "amice/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "amice/error.hpp"

namespace amice {

namespace {

// L_n(x) and L_{n-1}(x) by the three-term recurrence.
std::pair<double, double> laguerre(std::size_t n, double x) {
    double p0 = 1.0, p1 = 1.0 - x;
    if (n == 0) return {p0, 0.0};
    for (std::size_t k = 1; k < n; ++k) {
        double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

}  // namespace

QuadratureRule gauss_laguerre(std::size_t n) {
    if (n < 1 || n > 256) throw InvalidInput("Gauss-Laguerre node count must be in 1..256");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double dn = static_cast<double>(n);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // Initial guesses for the roots in increasing order, then Newton.
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * dn);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * dn);
        } else {
            const double ai = static_cast<double>(i - 1);
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
        }
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            auto [ln, ln1] = laguerre(n, z);
            deriv = dn * (ln - ln1) / z;
            const double step = ln / deriv;
            z -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        auto [ln, ln1] = laguerre(n, z);
        deriv = dn * (ln - ln1) / z;
        rule.nodes[i] = z;
        // w_i = 1 / (x_i L_n'(x_i)^2)
        rule.weights[i] = 1.0 / (z * deriv * deriv);
    }
    return rule;
}

QuadratureRule periodic_trapezoid(std::size_t n) {
    if (n < 1) throw InvalidInput("trapezoid needs at least one node");
    QuadratureRule rule;
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        rule.nodes.push_back(h * static_cast<double>(k));
        rule.weights.push_back(h);
    }
    return rule;
}

double pairwise_sum(const std::vector<double>& values) {
    std::vector<double> level = values;
    if (level.empty()) return 0.0;
    while (level.size() > 1) {
        std::vector<double> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    return level.front();
}

}  // namespace amice
