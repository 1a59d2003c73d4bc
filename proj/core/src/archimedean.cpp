#include "amice/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "amice/error.hpp"
#include "amice/quadrature.hpp"

namespace amice {

namespace {

constexpr double kPi = std::numbers::pi;

Rational rational_pow(const Rational& c, int e) {
    Rational out = 1;
    Rational base = e >= 0 ? c : Rational(1) / c;
    for (int i = 0; i < std::abs(e); ++i) out *= base;
    return out;
}

}  // namespace

PiPolynomial::PiPolynomial(Rational constant) {
    if (constant != 0) terms_[0] = std::move(constant);
}

PiPolynomial PiPolynomial::monomial(Rational coefficient, int pi_power) {
    PiPolynomial out;
    if (coefficient != 0) out.terms_[pi_power] = std::move(coefficient);
    return out;
}

PiPolynomial PiPolynomial::scaled_pi_power(const Rational& c, int exponent) {
    if (c == 0) throw InvalidInput("scaled_pi_power needs a nonzero scale");
    return monomial(rational_pow(c, exponent), exponent);
}

Rational PiPolynomial::coefficient(int pi_power) const {
    auto it = terms_.find(pi_power);
    return it == terms_.end() ? Rational(0) : it->second;
}

double PiPolynomial::evaluate() const {
    double total = 0.0;
    for (const auto& [e, c] : terms_) total += static_cast<double>(c) * std::pow(kPi, e);
    return total;
}

void PiPolynomial::prune() {
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

PiPolynomial& PiPolynomial::operator+=(const PiPolynomial& other) {
    for (const auto& [e, c] : other.terms_) terms_[e] += c;
    prune();
    return *this;
}

PiPolynomial& PiPolynomial::operator-=(const PiPolynomial& other) {
    for (const auto& [e, c] : other.terms_) terms_[e] -= c;
    prune();
    return *this;
}

PiPolynomial& PiPolynomial::operator*=(const PiPolynomial& other) {
    std::map<int, Rational> out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : other.terms_) out[e1 + e2] += c1 * c2;
    terms_ = std::move(out);
    prune();
    return *this;
}

PiPolynomial& PiPolynomial::operator*=(const Rational& c) {
    for (auto& [e, v] : terms_) v *= c;
    prune();
    return *this;
}

std::string PiPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << amice::to_string(it->second);
        if (it->first != 0) os << "*pi^" << it->first;
    }
    return os.str();
}

Integer double_factorial(int n) {
    if (n < -1) throw InvalidInput("double factorial of an integer below -1");
    Integer out = 1;
    for (int k = n; k > 1; k -= 2) out *= k;
    return out;
}

PiPolynomial gamma_coeff(int l, int alpha, int beta) {
    if (l < 0 || alpha < 0 || beta < 0 || alpha + beta > l) {
        throw InvalidInput("gamma_coeff needs 0 <= alpha + beta <= l");
    }
    Integer sum = 0;
    for (int j = alpha; j <= l - beta; ++j) {
        const int k = l - j;
        sum += binomial(Integer(l), static_cast<unsigned>(j)) *
               binomial(Integer(2 * j), static_cast<unsigned>(2 * alpha)) *
               binomial(Integer(2 * k), static_cast<unsigned>(2 * beta)) * double_factorial(2 * j - 2 * alpha - 1) *
               double_factorial(2 * k - 2 * beta - 1);
    }
    return PiPolynomial::scaled_pi_power(Rational(-4), alpha + beta - l) * Rational(sum);
}

PiPolynomial delta_coeff(int l, int alpha, int beta) {
    PiPolynomial g = gamma_coeff(l, alpha, beta);
    return g * PiPolynomial::scaled_pi_power(Rational(4), -alpha - beta) *
           Rational(double_factorial(2 * alpha - 1) * double_factorial(2 * beta - 1));
}

PiPolynomial delta_diagonal_sum(int r) {
    if (r < 0) throw InvalidInput("delta_diagonal_sum needs r >= 0");
    PiPolynomial total;
    for (int a = 0; a <= r; ++a) total += delta_coeff(r, a, r - a);
    return total;
}

XplusState xplus_recurrence(const XplusState& state) {
    const PiPolynomial four_pi = PiPolynomial::monomial(4, 1);
    XplusState out;
    auto add = [&](int l, int m, const PiPolynomial& c) {
        if (c.is_zero()) return;
        auto& slot = out[{l, m}];
        slot += c;
        if (slot.is_zero()) out.erase({l, m});
    };
    for (const auto& [key, c] : state) {
        const auto [l, m] = key;
        if (l < 0 || m < 0) throw InvalidInput("phi^{(l,m)} needs l, m >= 0");
        if (l > 0) add(l - 1, m + 1, c * Rational(l * l));
        add(l, m + 1, c * four_pi * Rational(-(2 * l + 1)));
        add(l + 1, m + 1, c * four_pi * four_pi);
    }
    return out;
}

XplusState xplus_iterate(const XplusState& state, int times) {
    XplusState out = state;
    for (int i = 0; i < times; ++i) out = xplus_recurrence(out);
    return out;
}

std::complex<double> phi_lm(int l, int m, std::complex<double> z1, std::complex<double> z2) {
    const double n1 = std::norm(z1);
    const double n2 = std::norm(z2);
    return std::pow(n1, l) * std::pow(z2, 2 * m) * std::exp(-2.0 * kPi * (n1 + n2));
}

namespace {

using Coords = std::array<double, 4>;  // x1, y1, x2, y2

struct Stencil {
    int l, m;
    double h;

    std::complex<double> f(const Coords& x) const {
        return phi_lm(l, m, {x[0], x[1]}, {x[2], x[3]});
    }

    Coords shifted(Coords x, int axis, double t) const {
        x[static_cast<std::size_t>(axis)] += t;
        return x;
    }

    template <class F>
    std::complex<double> d1(const F& g, const Coords& x, int axis) const {
        return (-g(shifted(x, axis, 2 * h)) + 8.0 * g(shifted(x, axis, h)) - 8.0 * g(shifted(x, axis, -h)) +
                g(shifted(x, axis, -2 * h))) /
               (12.0 * h);
    }

    std::complex<double> d2(const Coords& x, int axis) const {
        auto g = [this](const Coords& y) { return f(y); };
        return (-g(shifted(x, axis, 2 * h)) + 16.0 * g(shifted(x, axis, h)) - 30.0 * g(x) +
                16.0 * g(shifted(x, axis, -h)) - g(shifted(x, axis, -2 * h))) /
               (12.0 * h * h);
    }

    std::complex<double> mixed(const Coords& x, int a, int b) const {
        auto inner = [this, b](const Coords& y) { return d1([this](const Coords& w) { return f(w); }, y, b); };
        return d1(inner, x, a);
    }

    std::complex<double> first(const Coords& x, int axis) const {
        return d1([this](const Coords& y) { return f(y); }, x, axis);
    }
};

std::complex<double> xplus_numeric(int l, int m, const C2Point& z, double h) {
    const std::complex<double> i(0.0, 1.0);
    Stencil st{l, m, h};
    Coords x{z[0].real(), z[0].imag(), z[1].real(), z[1].imag()};
    const auto d02 = st.mixed(x, 0, 2), d03 = st.mixed(x, 0, 3);
    const auto d12 = st.mixed(x, 1, 2), d13 = st.mixed(x, 1, 3);
    const auto d23 = st.mixed(x, 2, 3);
    const auto lap1 = 0.25 * (st.d2(x, 0) + st.d2(x, 1));
    const auto dzb1_dzb2 = 0.25 * (d02 + i * d03 + i * d12 - d13);
    const auto dz1_dzb2 = 0.25 * (d02 + i * d03 - i * d12 + d13);
    const auto dzb2_dzb2 = 0.25 * (st.d2(x, 2) - st.d2(x, 3) + 2.0 * i * d23);
    const auto dzb2 = 0.5 * (st.first(x, 2) + i * st.first(x, 3));
    const auto z1 = z[0], z2 = z[1];
    return z2 * z2 * lap1 + std::conj(z1) * z2 * dzb1_dzb2 + z1 * z2 * dz1_dzb2 + z1 * std::conj(z1) * dzb2_dzb2 +
           z2 * dzb2;
}

std::complex<double> xplus_predicted(int l, int m, const C2Point& z) {
    std::complex<double> total = 0.0;
    for (const auto& [key, c] : xplus_recurrence({{{l, m}, PiPolynomial(1)}})) {
        total += c.evaluate() * phi_lm(key.first, key.second, z[0], z[1]);
    }
    return total;
}

}  // namespace

double xplus_numeric_check(int l, int m, const std::vector<C2Point>& points, double h) {
    if (!(h > 0.0) || h > 0.5 || !std::isfinite(h)) throw InvalidInput("finite-difference step must lie in (0, 0.5]");
    if (l < 0 || m < 0) throw InvalidInput("phi^{(l,m)} needs l, m >= 0");
    double worst = 0.0;
    for (const auto& z : points) {
        if (std::abs(z[0]) == 0.0 || std::abs(z[1]) == 0.0) throw InvalidInput("sample points must avoid the axes");
        const auto expected = xplus_predicted(l, m, z);
        const auto got = xplus_numeric(l, m, z, h);
        worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
    }
    return worst;
}

double xplus_richardson_order(int l, int m, const std::vector<C2Point>& points, double h) {
    const double coarse = xplus_numeric_check(l, m, points, h);
    const double fine = xplus_numeric_check(l, m, points, h / 2);
    return std::log2(coarse / fine);
}

void validate(const LocalFactorParams& p) {
    if (p.kappa < 1) throw InvalidInput("kappa must be >= 1");
    if (p.r < 0) throw InvalidInput("r must be >= 0");
    if (p.l < 0 || p.l > p.r) throw InvalidInput("l must lie in 0..r");
    if (!(p.s > 0.0) || !std::isfinite(p.s)) throw InvalidInput("s must be a positive real (convergent range)");
    if (!(p.nu_u_abs > 0.0) || !std::isfinite(p.nu_u_abs)) throw InvalidInput("|nu(u)| must be positive");
    if (std::abs(std::abs(p.zeta_u) - 1.0) > 1e-12) throw InvalidInput("zeta_u must have modulus 1");
}

namespace {

std::complex<double> phase(const LocalFactorParams& p) { return std::pow(p.zeta_u, 2 * (p.kappa + p.r)); }

}  // namespace

std::complex<double> local_integral_quadrature(const LocalFactorParams& p, QuadratureNodes nodes) {
    validate(p);
    if (nodes.radial < 2 || nodes.angular < 2) throw InvalidInput("quadrature needs at least two nodes per axis");

    // Radial: int_0^inf a^c e^{-4 pi a} da = (4 pi)^{-c-1} int_0^inf u^c e^{-u} du.
    const double c = 2.0 * p.kappa + p.r + p.s - 0.5;
    const QuadratureRule lag = gauss_laguerre(nodes.radial);
    std::vector<double> radial_terms;
    radial_terms.reserve(lag.nodes.size());
    for (std::size_t i = 0; i < lag.nodes.size(); ++i) radial_terms.push_back(lag.weights[i] * std::pow(lag.nodes[i], c));
    const double radial = pairwise_sum(radial_terms) * std::pow(4.0 * kPi, -c - 1.0);

    // Angular: sum_{alpha+beta <= l} delta (cos t)^{alpha+beta} e^{(2r - alpha - beta) i t}.
    std::vector<double> by_degree(static_cast<std::size_t>(p.l) + 1, 0.0);
    for (int a = 0; a <= p.l; ++a)
        for (int b = 0; a + b <= p.l; ++b) by_degree[static_cast<std::size_t>(a + b)] += delta_coeff(p.l, a, b).evaluate();
    const QuadratureRule trap = periodic_trapezoid(nodes.angular);
    std::vector<double> re_terms, im_terms;
    for (std::size_t k = 0; k < trap.nodes.size(); ++k) {
        const double t = trap.nodes[k];
        std::complex<double> v = 0.0;
        for (int d = 0; d <= p.l; ++d) {
            v += by_degree[static_cast<std::size_t>(d)] * std::pow(std::cos(t), d) *
                 std::polar(1.0, (2.0 * p.r - d) * t);
        }
        re_terms.push_back(trap.weights[k] * v.real());
        im_terms.push_back(trap.weights[k] * v.imag());
    }
    const std::complex<double> angular(pairwise_sum(re_terms), pairwise_sum(im_terms));

    return phase(p) * std::pow(p.nu_u_abs, -0.5) / kPi * radial * angular;
}

std::complex<double> local_factor_closed_form(const LocalFactorParams& p) {
    validate(p);
    if (p.l < p.r) return 0.0;
    const double r_fact = std::tgamma(p.r + 1.0);
    const double value = 2.0 * r_fact * std::pow(4.0 * kPi, -(p.s + 2.0 * (p.kappa + p.r) + 0.5)) *
                         std::tgamma(p.s + 2.0 * p.kappa + p.r + 0.5);
    return phase(p) * std::pow(p.nu_u_abs, -0.5) * value;
}

PiPolynomial local_factor_exact_half(int kappa, int r, int l) {
    validate(LocalFactorParams{kappa, r, l});
    if (l < r) return {};
    Rational front = 2 * Rational(factorial(static_cast<unsigned>(r)) * factorial(static_cast<unsigned>(2 * kappa + r)));
    return PiPolynomial::scaled_pi_power(Rational(4), -(2 * kappa + 2 * r + 1)) * front;
}

LocalFactorReport local_factor_report(const LocalFactorParams& params, QuadratureNodes nodes) {
    LocalFactorReport rep;
    rep.quadrature = local_integral_quadrature(params, nodes);
    rep.refined = local_integral_quadrature(params, {nodes.radial * 2, nodes.angular * 2});
    rep.closed_form = local_factor_closed_form(params);
    LocalFactorParams diagonal = params;
    diagonal.l = params.r;
    rep.scale = std::abs(local_factor_closed_form(diagonal));
    rep.relative_error = std::abs(rep.quadrature - rep.closed_form) / rep.scale;
    rep.self_consistency = std::abs(rep.refined - rep.quadrature) / rep.scale;
    return rep;
}

PiPolynomial lambda_infinity(int kappa, int r) {
    if (kappa < 1 || r < 0) throw InvalidInput("lambda_infinity needs kappa >= 1 and r >= 0");
    Rational c = Rational(factorial(static_cast<unsigned>(r))) * (2 * kappa + r) * (2 * kappa + r) / 2;
    return PiPolynomial::monomial(c, 2 * kappa + r - 1);
}

}  // namespace amice
