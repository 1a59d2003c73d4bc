#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "amice/integer.hpp"
#include "amice/padic.hpp"

namespace amice {

// m-th cyclotomic polynomial, coefficients from degree 0 upward.
const std::vector<Integer>& cyclotomic_polynomial(std::int64_t m);
std::int64_t euler_phi(std::int64_t m);

// Element of Q(zeta_m), stored as a polynomial in zeta_m of degree < phi(m).
class CyclotomicNumber {
public:
    explicit CyclotomicNumber(std::int64_t m = 1, Rational value = 0);
    CyclotomicNumber(std::int64_t m, std::vector<Rational> coeffs);  // reduced on construction

    // zeta_m^k for any integer k.
    static CyclotomicNumber zeta_power(std::int64_t m, std::int64_t k);

    std::int64_t order() const { return m_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;

    // The same number viewed in Q(zeta_n), m | n.
    CyclotomicNumber promoted(std::int64_t n) const;
    // zeta -> zeta^-1.
    CyclotomicNumber conjugate() const;

    std::complex<double> to_complex() const;
    // Image under zeta_m -> zeta (an m-th root of unity in Z_p).
    PadicScalar to_padic(const PadicScalar& zeta) const;

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
    CyclotomicNumber operator*(const Rational& c) const;
    CyclotomicNumber operator-() const;

private:
    std::int64_t m_;
    std::vector<Rational> coeffs_;
};

// Element x + y*s of Q(zeta_m)[s]/(s^2 - d): values of weight functions,
// with s standing for sqrt(d_K).
class AlgebraicValue {
public:
    AlgebraicValue() : AlgebraicValue(-1, 1) {}
    AlgebraicValue(Integer d, std::int64_t m, Rational value = 0);
    AlgebraicValue(Integer d, CyclotomicNumber x, CyclotomicNumber y);

    static AlgebraicValue one(Integer d, std::int64_t m = 1) { return AlgebraicValue(std::move(d), m, 1); }
    static AlgebraicValue zeta_power(Integer d, std::int64_t m, std::int64_t k);

    const Integer& radicand() const { return d_; }
    std::int64_t order() const { return x_.order(); }
    const CyclotomicNumber& rational_part() const { return x_; }
    const CyclotomicNumber& sqrt_part() const { return y_; }
    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

    AlgebraicValue promoted(std::int64_t n) const;
    // Complex conjugation: zeta -> zeta^-1 and s -> -s (d < 0).
    AlgebraicValue conjugate() const;
    // s -> -s only.
    AlgebraicValue galois_sigma() const;
    AlgebraicValue pow(unsigned e) const;

    // zeta_m -> exp(2 pi i / m), s -> i sqrt(|d|).
    std::complex<double> to_complex() const;
    PadicScalar to_padic(const PadicScalar& sqrt_d, const PadicScalar& zeta) const;

    friend bool operator==(const AlgebraicValue& a, const AlgebraicValue& b);
    friend AlgebraicValue operator+(const AlgebraicValue& a, const AlgebraicValue& b);
    friend AlgebraicValue operator-(const AlgebraicValue& a, const AlgebraicValue& b);
    friend AlgebraicValue operator*(const AlgebraicValue& a, const AlgebraicValue& b);
    AlgebraicValue operator*(const Rational& c) const;

private:
    Integer d_;
    CyclotomicNumber x_;
    CyclotomicNumber y_;
};

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x);
std::ostream& operator<<(std::ostream& os, const AlgebraicValue& x);

}  // namespace amice
