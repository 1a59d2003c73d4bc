#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>

#include "amice/integer.hpp"

namespace amice {

// An element of Q_p known modulo p^precision, stored as p^valuation * unit
// with 0 <= unit < p^(precision - valuation) and gcd(unit, p) = 1.
//
// Zero carries valuation kInfiniteValuation. An exact zero (the product of
// something with the integer 0) carries kExactPrecision, which is absorbed
// by min() in every propagation rule.
class PadicScalar {
public:
    static constexpr int kInfiniteValuation = std::numeric_limits<int>::max();
    static constexpr int kExactPrecision = 1 << 28;
    static constexpr int kMaxPrecision = 1 << 16;

    PadicScalar(std::int64_t prime, int valuation, Integer unit, int precision);

    static PadicScalar zero(std::int64_t prime, int precision);
    static PadicScalar exact_zero(std::int64_t prime);
    static PadicScalar from_integer(std::int64_t prime, const Integer& n, int precision);
    static PadicScalar from_rational(std::int64_t prime, const Rational& x, int precision);

    std::int64_t prime() const { return prime_; }
    int valuation() const { return valuation_; }
    const Integer& unit() const { return unit_; }
    int precision() const { return precision_; }
    bool is_zero() const { return valuation_ == kInfiniteValuation; }
    bool is_exact_zero() const { return is_zero() && precision_ >= kExactPrecision; }
    bool is_integral() const { return valuation_ >= 0; }
    bool is_unit() const { return valuation_ == 0; }

    // p^valuation * unit as a rational number.
    Rational value() const;
    // Representative in [0, p^precision); requires valuation >= 0.
    Integer residue() const;

    PadicScalar operator-() const;
    PadicScalar inverse() const;
    PadicScalar pow(unsigned exponent) const;

    // Multiplication and division by an exact integer.
    PadicScalar scaled(const Integer& n) const;
    PadicScalar divided(const Integer& n) const;

    // Lowers the absolute precision; never raises it.
    PadicScalar with_precision(int precision) const;

    // True when the difference vanishes at the common precision.
    bool agrees_with(const PadicScalar& other) const;

    bool operator==(const PadicScalar& other) const = default;

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);

    PadicScalar& operator+=(const PadicScalar& b) { return *this = *this + b; }
    PadicScalar& operator-=(const PadicScalar& b) { return *this = *this - b; }
    PadicScalar& operator*=(const PadicScalar& b) { return *this = *this * b; }

private:
    PadicScalar() = default;
    // p^base_valuation * numerator, known modulo p^precision.
    static PadicScalar normalize(std::int64_t prime, int base_valuation, Integer numerator, int precision);
    // Valuation used in precision bookkeeping: a zero is at least as divisible as its precision.
    int effective_valuation() const { return is_zero() ? precision_ : valuation_; }

    std::int64_t prime_ = 2;
    int valuation_ = kInfiniteValuation;
    Integer unit_ = 0;
    int precision_ = 0;
};

std::ostream& operator<<(std::ostream& os, const PadicScalar& x);

void require_prime(std::int64_t p);

// Square root of an integer d in Z_p, lifted from the residue root_mod_p
// (least root when omitted). Requires p odd with d a nonzero square mod p,
// or p = 2 with d = 1 mod 8.
PadicScalar hensel_sqrt(const Integer& d, std::int64_t p, int precision,
                        std::optional<std::int64_t> root_mod_p = std::nullopt);

// Teichmuller lift of a unit residue.
PadicScalar teichmuller(std::int64_t residue, std::int64_t p, int precision);

// Least primitive root modulo an odd prime p.
std::int64_t primitive_root(std::int64_t p);

// Primitive m-th root of unity in Z_p (m | p - 1): the Teichmuller lift of
// g^((p-1)/m) for the given generator g (least primitive root by default).
PadicScalar root_of_unity(std::int64_t m, std::int64_t p, int precision,
                          std::optional<std::int64_t> generator = std::nullopt);

}  // namespace amice
