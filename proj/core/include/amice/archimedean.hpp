#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amice/integer.hpp"

namespace amice {

// Finite Laurent polynomial in pi with rational coefficients.
class PiPolynomial {
public:
    PiPolynomial() = default;
    explicit PiPolynomial(Rational constant);
    static PiPolynomial monomial(Rational coefficient, int pi_power);
    // (c * pi)^e for any integer e.
    static PiPolynomial scaled_pi_power(const Rational& c, int exponent);

    const std::map<int, Rational>& terms() const { return terms_; }
    Rational coefficient(int pi_power) const;
    bool is_zero() const { return terms_.empty(); }
    double evaluate() const;

    PiPolynomial& operator+=(const PiPolynomial& other);
    PiPolynomial& operator-=(const PiPolynomial& other);
    PiPolynomial& operator*=(const PiPolynomial& other);
    PiPolynomial& operator*=(const Rational& c);
    friend PiPolynomial operator+(PiPolynomial a, const PiPolynomial& b) { return a += b; }
    friend PiPolynomial operator-(PiPolynomial a, const PiPolynomial& b) { return a -= b; }
    friend PiPolynomial operator*(PiPolynomial a, const PiPolynomial& b) { return a *= b; }
    friend PiPolynomial operator*(PiPolynomial a, const Rational& c) { return a *= c; }
    friend bool operator==(const PiPolynomial&, const PiPolynomial&) = default;

    std::string to_string() const;

private:
    void prune();
    std::map<int, Rational> terms_;
};

// n!! with (-1)!! = 1 (and 0!! = 1).
Integer double_factorial(int n);

PiPolynomial gamma_coeff(int l, int alpha, int beta);
PiPolynomial delta_coeff(int l, int alpha, int beta);

// Sum over alpha of delta^r_{alpha, r - alpha}.
PiPolynomial delta_diagonal_sum(int r);

using XplusState = std::map<std::pair<int, int>, PiPolynomial>;

// One application of (X+)' on a combination of phi^{(l,m)}.
XplusState xplus_recurrence(const XplusState& state);
XplusState xplus_iterate(const XplusState& state, int times);

// phi^{(l,m)}(z1, z2) = (z1 conj z1)^l z2^{2m} exp(-2 pi (|z1|^2 + |z2|^2)).
std::complex<double> phi_lm(int l, int m, std::complex<double> z1, std::complex<double> z2);

using C2Point = std::array<std::complex<double>, 2>;

// (X+)' applied to phi^{(l,m)} by 4th-order central differences in the real
// coordinates, against the recurrence evaluated pointwise. Returns the maximum
// relative deviation over the points.
double xplus_numeric_check(int l, int m, const std::vector<C2Point>& points, double h = 1e-3);

// log2(dev(h) / dev(h/2)).
double xplus_richardson_order(int l, int m, const std::vector<C2Point>& points, double h);

struct LocalFactorParams {
    int kappa = 1;
    int r = 0;
    int l = 0;
    double s = 0.5;
    double nu_u_abs = 1.0;
    std::complex<double> zeta_u{1.0, 0.0};
};

struct QuadratureNodes {
    std::size_t radial = 64;
    std::size_t angular = 256;
};

void validate(const LocalFactorParams& params);

std::complex<double> local_integral_quadrature(const LocalFactorParams& params, QuadratureNodes nodes = {});
std::complex<double> local_factor_closed_form(const LocalFactorParams& params);

// Exact value of the closed form at s = 1/2, |nu| = 1, zeta = 1:
// 2 r! (2 kappa + r)! (4 pi)^{-(2 kappa + 2 r + 1)}, or 0 when l < r.
PiPolynomial local_factor_exact_half(int kappa, int r, int l);

struct LocalFactorReport {
    std::complex<double> quadrature;
    std::complex<double> refined;  // doubled node counts
    std::complex<double> closed_form;
    double scale = 0.0;            // |closed form at l = r|
    double relative_error = 0.0;   // |quadrature - closed| / scale
    double self_consistency = 0.0; // |refined - quadrature| / scale
};

LocalFactorReport local_factor_report(const LocalFactorParams& params, QuadratureNodes nodes = {});

// 1/2 r! (2 kappa + r)^2 pi^{2 kappa + r - 1}.
PiPolynomial lambda_infinity(int kappa, int r);

}  // namespace amice
