#include "amice/padic.hpp"

#include <algorithm>
#include <ostream>

#include "amice/error.hpp"

namespace amice {

namespace {

Integer prime_power(std::int64_t p, int e) { return ipow(Integer(p), static_cast<unsigned>(e)); }

int clamp_precision(long long precision) {
    return static_cast<int>(std::min<long long>(precision, PadicScalar::kExactPrecision));
}

void check_same_prime(const PadicScalar& a, const PadicScalar& b) {
    if (a.prime() != b.prime()) {
        throw InvalidInput("p-adic prime mismatch: " + std::to_string(a.prime()) + " vs " +
                           std::to_string(b.prime()));
    }
}

}  // namespace

void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
}

PadicScalar::PadicScalar(std::int64_t prime, int valuation, Integer unit, int precision)
    : prime_(prime), valuation_(valuation), unit_(std::move(unit)), precision_(precision) {
    require_prime(prime);
    if (precision_ < 1) throw PrecisionExhausted("p-adic value known modulo p^0");
    if (valuation_ == kInfiniteValuation) {
        if (unit_ != 0) throw InvalidInput("zero element must have unit 0");
        return;
    }
    if (precision_ > kMaxPrecision) throw InvalidInput("precision too large for a nonzero element");
    if (valuation_ >= precision_) throw InvalidInput("valuation must be below the precision");
    if (unit_ <= 0 || unit_ % prime_ == 0 || unit_ >= prime_power(prime_, precision_ - valuation_)) {
        throw InvalidInput("unit part out of range or divisible by p");
    }
}

PadicScalar PadicScalar::zero(std::int64_t prime, int precision) {
    return PadicScalar(prime, kInfiniteValuation, 0, precision);
}

PadicScalar PadicScalar::exact_zero(std::int64_t prime) { return zero(prime, kExactPrecision); }

PadicScalar PadicScalar::normalize(std::int64_t prime, int base_valuation, Integer numerator,
                                   int precision) {
    precision = clamp_precision(precision);
    if (precision < 1) throw PrecisionExhausted("p-adic value known modulo p^0");
    if (numerator == 0 || base_valuation >= precision) return zero(prime, precision);
    if (precision > kMaxPrecision) throw InvalidInput("precision too large for a nonzero element");
    Integer modulus = prime_power(prime, precision - base_valuation);
    numerator = mod_floor(numerator, modulus);
    if (numerator == 0) return zero(prime, precision);
    int t = 0;
    while (numerator % prime == 0) {
        numerator /= prime;
        ++t;
    }
    int v = base_valuation + t;
    PadicScalar out;
    out.prime_ = prime;
    out.valuation_ = v;
    out.unit_ = mod_floor(numerator, prime_power(prime, precision - v));
    out.precision_ = precision;
    return out;
}

PadicScalar PadicScalar::from_integer(std::int64_t prime, const Integer& n, int precision) {
    require_prime(prime);
    if (precision > kMaxPrecision) throw InvalidInput("requested precision too large");
    return normalize(prime, 0, n, precision);
}

PadicScalar PadicScalar::from_rational(std::int64_t prime, const Rational& x, int precision) {
    require_prime(prime);
    if (precision > kMaxPrecision) throw InvalidInput("requested precision too large");
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    if (num == 0) return zero(prime, precision);
    int vd = amice::valuation(den, prime);
    den /= prime_power(prime, vd);
    int vn = amice::valuation(num, prime);
    num /= prime_power(prime, vn);
    int v = vn - vd;
    if (v >= precision) return zero(prime, precision);
    Integer modulus = prime_power(prime, precision - v);
    return normalize(prime, v, mod_floor(num * inverse_mod(den, modulus), modulus), precision);
}

Rational PadicScalar::value() const {
    if (is_zero()) return Rational(0);
    if (valuation_ >= 0) return Rational(unit_ * prime_power(prime_, valuation_));
    return Rational(unit_, prime_power(prime_, -valuation_));
}

Integer PadicScalar::residue() const {
    if (is_zero()) return 0;
    if (valuation_ < 0) throw InvalidInput("residue of a non-integral p-adic number");
    return unit_ * prime_power(prime_, valuation_);
}

PadicScalar PadicScalar::operator-() const {
    if (is_zero()) return *this;
    return normalize(prime_, valuation_, -unit_, precision_);
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    check_same_prime(a, b);
    int precision = std::min(a.precision_, b.precision_);
    if (a.is_zero()) return b.with_precision(precision);
    if (b.is_zero()) return a.with_precision(precision);
    int base = std::min(a.valuation_, b.valuation_);
    Integer sum = a.unit_ * prime_power(a.prime_, a.valuation_ - base) +
                  b.unit_ * prime_power(b.prime_, b.valuation_ - base);
    return PadicScalar::normalize(a.prime_, base, std::move(sum), precision);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    check_same_prime(a, b);
    long long precision = std::min<long long>(static_cast<long long>(a.precision_) + b.effective_valuation(),
                                              static_cast<long long>(b.precision_) + a.effective_valuation());
    if (a.is_zero() || b.is_zero()) {
        if (precision < 1) throw PrecisionExhausted("p-adic product known modulo p^0");
        return PadicScalar::zero(a.prime_, clamp_precision(precision));
    }
    return PadicScalar::normalize(a.prime_, a.valuation_ + b.valuation_, a.unit_ * b.unit_,
                                  static_cast<int>(precision));
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inverse(); }

PadicScalar PadicScalar::inverse() const {
    if (is_zero()) throw InvalidInput("inversion of zero");
    int relative = precision_ - valuation_;
    Integer inv = inverse_mod(unit_, prime_power(prime_, relative));
    return normalize(prime_, -valuation_, std::move(inv), -valuation_ + relative);
}

PadicScalar PadicScalar::pow(unsigned exponent) const {
    PadicScalar result = from_integer(prime_, 1, std::min(precision_, kMaxPrecision));
    if (exponent == 0) return result;
    result = *this;
    for (unsigned i = 1; i < exponent; ++i) result = result * *this;
    return result;
}

PadicScalar PadicScalar::scaled(const Integer& n) const {
    if (n == 0) return exact_zero(prime_);
    int vn = amice::valuation(n, prime_);
    long long precision = static_cast<long long>(precision_) + vn;
    if (is_zero()) return zero(prime_, clamp_precision(precision));
    return normalize(prime_, valuation_, unit_ * n, static_cast<int>(precision));
}

PadicScalar PadicScalar::divided(const Integer& n) const {
    if (n == 0) throw InvalidInput("division by zero");
    int vn = amice::valuation(n, prime_);
    Integer cofactor = n / prime_power(prime_, vn);
    int precision = precision_ >= kExactPrecision ? precision_ : precision_ - vn;
    if (is_zero()) {
        if (precision < 1) throw PrecisionExhausted("p-adic quotient known modulo p^0");
        return zero(prime_, precision);
    }
    int v = valuation_ - vn;
    if (precision < 1) throw PrecisionExhausted("p-adic quotient known modulo p^0");
    Integer modulus = prime_power(prime_, precision - v);
    return normalize(prime_, v, unit_ * inverse_mod(cofactor, modulus), precision);
}

PadicScalar PadicScalar::with_precision(int precision) const {
    if (precision >= precision_) return *this;
    if (is_zero()) return zero(prime_, precision);
    return normalize(prime_, valuation_, unit_, precision);
}

bool PadicScalar::agrees_with(const PadicScalar& other) const {
    return (*this - other).is_zero();
}

std::ostream& operator<<(std::ostream& os, const PadicScalar& x) {
    if (x.is_zero()) return os << "O(" << x.prime() << "^" << x.precision() << ")";
    return os << x.prime() << "^" << x.valuation() << "*" << x.unit() << " + O(" << x.prime() << "^"
              << x.precision() << ")";
}

PadicScalar hensel_sqrt(const Integer& d, std::int64_t p, int precision, std::optional<std::int64_t> root_mod_p) {
    require_prime(p);
    if (precision < 1) throw InvalidInput("precision must be positive");
    if (p == 2) {
        if (mod_floor(d, Integer(8)) != 1) throw InvalidInput("d must be 1 mod 8 to have a square root in Z_2");
        // x^2 = d mod 2^(k+1) with x determined mod 2^k.
        Integer x = root_mod_p.value_or(1) % 4 == 3 ? 3 : 1;
        for (int k = 2; k < precision; ++k) {
            Integer modulus = ipow(Integer(2), static_cast<unsigned>(k + 2));
            if (mod_floor(x * x - d, modulus) != 0) x += ipow(Integer(2), static_cast<unsigned>(k));
        }
        return PadicScalar::from_integer(2, x, precision);
    }
    std::int64_t dmod = to_int64(mod_floor(d, Integer(p)));
    if (dmod == 0) throw InvalidInput("d must be a unit modulo p");
    std::int64_t r0;
    if (root_mod_p) {
        r0 = mod_floor(*root_mod_p, p);
        if (mulmod(r0, r0, p) != dmod) throw InvalidInput("supplied residue is not a square root of d mod p");
    } else {
        auto r = sqrt_mod_prime(dmod, p);
        if (!r) throw InvalidInput("d is not a square modulo p");
        r0 = *r;
    }
    Integer modulus = ipow(Integer(p), static_cast<unsigned>(precision));
    Integer x = r0;
    // Newton doubles the number of correct digits each step.
    for (int correct = 1; correct < precision; correct *= 2) {
        x = mod_floor(x - (x * x - d) * inverse_mod(2 * x, modulus), modulus);
    }
    return PadicScalar::from_integer(p, x, precision);
}

PadicScalar teichmuller(std::int64_t residue, std::int64_t p, int precision) {
    require_prime(p);
    if (mod_floor(residue, p) == 0) throw InvalidInput("Teichmuller lift needs a unit residue");
    Integer modulus = ipow(Integer(p), static_cast<unsigned>(precision));
    Integer x = mod_floor(residue, p);
    for (int i = 0; i < precision; ++i) x = boost::multiprecision::powm(x, Integer(p), modulus);
    return PadicScalar::from_integer(p, x, precision);
}

std::int64_t primitive_root(std::int64_t p) {
    require_prime(p);
    if (p == 2) return 1;
    auto factors = factor(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = std::all_of(factors.begin(), factors.end(),
                              [&](const auto& f) { return powmod(g, (p - 1) / f.first, p) != 1; });
        if (ok) return g;
    }
    throw InvalidInput("no primitive root found");
}

PadicScalar root_of_unity(std::int64_t m, std::int64_t p, int precision, std::optional<std::int64_t> generator) {
    require_prime(p);
    if (m < 1 || (p - 1) % m != 0) throw InvalidInput("m must divide p - 1");
    std::int64_t g = generator.value_or(primitive_root(p));
    std::int64_t z = powmod(g, (p - 1) / m, p);
    for (std::int64_t q = 1; q < m; ++q) {
        if (m % q == 0 && powmod(z, q, p) == 1) throw InvalidInput("generator does not give a primitive root of unity");
    }
    return teichmuller(z, p, precision);
}

}  // namespace amice
