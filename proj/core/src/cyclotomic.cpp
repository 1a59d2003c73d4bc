#include "amice/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>

#include "amice/error.hpp"

namespace amice {

namespace {

std::vector<Integer> poly_divide_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    // den is monic.
    std::vector<Integer> q(num.size() - den.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        Integer c = num[i + den.size() - 1];
        q[i] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    return q;
}

std::vector<Rational> reduce_mod(std::vector<Rational> coeffs, const std::vector<Integer>& phi) {
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = coeffs.size(); i-- > deg;) {
        Rational c = coeffs[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) coeffs[i - deg + j] -= c * Rational(phi[j]);
    }
    coeffs.resize(deg, Rational(0));
    return coeffs;
}

void check_order(std::int64_t m) {
    if (m < 1) throw InvalidInput("cyclotomic order must be positive");
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

}  // namespace

std::int64_t euler_phi(std::int64_t m) {
    check_order(m);
    std::int64_t result = m;
    for (auto [q, e] : factor(m)) result = result / q * (q - 1);
    return result;
}

const std::vector<Integer>& cyclotomic_polynomial(std::int64_t m) {
    check_order(m);
    static std::mutex mutex;
    static std::map<std::int64_t, std::vector<Integer>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(m); it != cache.end()) return it->second;
    }
    // x^m - 1 divided by Phi_d for every proper divisor d.
    std::vector<Integer> poly(static_cast<std::size_t>(m) + 1, 0);
    poly[0] = -1;
    poly[m] = 1;
    for (std::int64_t d = 1; d < m; ++d) {
        if (m % d == 0) poly = poly_divide_exact(poly, cyclotomic_polynomial(d));
    }
    std::lock_guard lock(mutex);
    return cache.emplace(m, std::move(poly)).first->second;
}

CyclotomicNumber::CyclotomicNumber(std::int64_t m, Rational value) : m_(m) {
    check_order(m);
    coeffs_.assign(static_cast<std::size_t>(euler_phi(m)), Rational(0));
    coeffs_[0] = value;
}

CyclotomicNumber::CyclotomicNumber(std::int64_t m, std::vector<Rational> coeffs) : m_(m) {
    check_order(m);
    coeffs_ = reduce_mod(std::move(coeffs), cyclotomic_polynomial(m));
}

CyclotomicNumber CyclotomicNumber::zeta_power(std::int64_t m, std::int64_t k) {
    std::vector<Rational> c(static_cast<std::size_t>(m), Rational(0));
    c[static_cast<std::size_t>(mod_floor(k, m))] = 1;
    return CyclotomicNumber(m, std::move(c));
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicNumber::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

CyclotomicNumber CyclotomicNumber::promoted(std::int64_t n) const {
    check_order(n);
    if (n % m_ != 0) throw InvalidInput("cannot promote Q(zeta_" + std::to_string(m_) + ") to Q(zeta_" +
                                        std::to_string(n) + ")");
    if (n == m_) return *this;
    const std::int64_t step = n / m_;
    std::vector<Rational> c(static_cast<std::size_t>(step) * coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * step] = coeffs_[i];
    return CyclotomicNumber(n, std::move(c));
}

CyclotomicNumber CyclotomicNumber::conjugate() const {
    std::vector<Rational> c(static_cast<std::size_t>(m_), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[(m_ - static_cast<std::int64_t>(i)) % m_] += coeffs_[i];
    return CyclotomicNumber(m_, std::move(c));
}

std::complex<double> CyclotomicNumber::to_complex() const {
    std::complex<double> z = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m_);
        z += static_cast<double>(coeffs_[i]) * std::polar(1.0, angle);
    }
    return z;
}

PadicScalar CyclotomicNumber::to_padic(const PadicScalar& zeta) const {
    const std::int64_t p = zeta.prime();
    const int precision = zeta.precision();
    PadicScalar sum = PadicScalar::exact_zero(p);
    PadicScalar power = PadicScalar::from_integer(p, 1, precision);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i > 0) power *= zeta;
        if (coeffs_[i] != 0) sum += PadicScalar::from_rational(p, coeffs_[i], precision) * power;
    }
    return sum;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.m_ == b.m_) return a.coeffs_ == b.coeffs_;
    const std::int64_t n = a.m_ / gcd64(a.m_, b.m_) * b.m_;
    return a.promoted(n).coeffs_ == b.promoted(n).coeffs_;
}

namespace {

std::int64_t common_order(std::int64_t a, std::int64_t b) { return a / gcd64(a, b) * b; }

}  // namespace

CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.m_ != b.m_) {
        const std::int64_t n = common_order(a.m_, b.m_);
        return a.promoted(n) + b.promoted(n);
    }
    CyclotomicNumber out = a;
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
    return out;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a + (-b); }

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.m_ != b.m_) {
        const std::int64_t n = common_order(a.m_, b.m_);
        return a.promoted(n) * b.promoted(n);
    }
    std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return CyclotomicNumber(a.m_, std::move(prod));
}

CyclotomicNumber CyclotomicNumber::operator*(const Rational& c) const {
    CyclotomicNumber out = *this;
    for (auto& x : out.coeffs_) x *= c;
    return out;
}

AlgebraicValue::AlgebraicValue(Integer d, std::int64_t m, Rational value)
    : d_(std::move(d)), x_(m, std::move(value)), y_(m, Rational(0)) {}

AlgebraicValue::AlgebraicValue(Integer d, CyclotomicNumber x, CyclotomicNumber y) : d_(std::move(d)) {
    const std::int64_t n = common_order(x.order(), y.order());
    x_ = x.promoted(n);
    y_ = y.promoted(n);
}

AlgebraicValue AlgebraicValue::zeta_power(Integer d, std::int64_t m, std::int64_t k) {
    return AlgebraicValue(std::move(d), CyclotomicNumber::zeta_power(m, k), CyclotomicNumber(m));
}

AlgebraicValue AlgebraicValue::promoted(std::int64_t n) const {
    return AlgebraicValue(d_, x_.promoted(n), y_.promoted(n));
}

AlgebraicValue AlgebraicValue::conjugate() const {
    return AlgebraicValue(d_, x_.conjugate(), -y_.conjugate());
}

AlgebraicValue AlgebraicValue::galois_sigma() const { return AlgebraicValue(d_, x_, -y_); }

AlgebraicValue AlgebraicValue::pow(unsigned e) const {
    AlgebraicValue result = one(d_, order());
    AlgebraicValue base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        base = base * base;
        e >>= 1U;
    }
    return result;
}

std::complex<double> AlgebraicValue::to_complex() const {
    std::complex<double> s = d_ < 0 ? std::complex<double>(0.0, std::sqrt(static_cast<double>(-d_)))
                                    : std::complex<double>(std::sqrt(static_cast<double>(d_)), 0.0);
    return x_.to_complex() + s * y_.to_complex();
}

PadicScalar AlgebraicValue::to_padic(const PadicScalar& sqrt_d, const PadicScalar& zeta) const {
    PadicScalar out = x_.to_padic(zeta);
    if (!y_.is_zero()) out += sqrt_d * y_.to_padic(zeta);
    return out;
}

namespace {

void check_radicand(const AlgebraicValue& a, const AlgebraicValue& b) {
    if (a.radicand() != b.radicand()) throw InvalidInput("algebraic values over different quadratic fields");
}

}  // namespace

bool operator==(const AlgebraicValue& a, const AlgebraicValue& b) {
    return a.d_ == b.d_ && a.x_ == b.x_ && a.y_ == b.y_;
}

AlgebraicValue operator+(const AlgebraicValue& a, const AlgebraicValue& b) {
    check_radicand(a, b);
    return AlgebraicValue(a.d_, a.x_ + b.x_, a.y_ + b.y_);
}

AlgebraicValue operator-(const AlgebraicValue& a, const AlgebraicValue& b) {
    check_radicand(a, b);
    return AlgebraicValue(a.d_, a.x_ - b.x_, a.y_ - b.y_);
}

AlgebraicValue operator*(const AlgebraicValue& a, const AlgebraicValue& b) {
    check_radicand(a, b);
    // (x1 + y1 s)(x2 + y2 s) = x1 x2 + d y1 y2 + (x1 y2 + x2 y1) s
    CyclotomicNumber x = a.x_ * b.x_ + (a.y_ * b.y_) * Rational(a.d_);
    CyclotomicNumber y = a.x_ * b.y_ + a.y_ * b.x_;
    return AlgebraicValue(a.d_, std::move(x), std::move(y));
}

AlgebraicValue AlgebraicValue::operator*(const Rational& c) const { return AlgebraicValue(d_, x_ * c, y_ * c); }

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x) {
    os << "[";
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) os << (i ? ", " : "") << to_string(x.coeffs()[i]);
    return os << "]_" << x.order();
}

std::ostream& operator<<(std::ostream& os, const AlgebraicValue& x) {
    return os << x.rational_part() << " + " << x.sqrt_part() << "*sqrt(" << x.radicand() << ")";
}

}  // namespace amice
