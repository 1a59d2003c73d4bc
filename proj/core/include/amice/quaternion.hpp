#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "amice/integer.hpp"

namespace amice {

// Places of Q: a prime, or kInfinitePlace for the real place.
inline constexpr std::int64_t kInfinitePlace = 0;

// Local Hilbert symbol (a, b)_v in {+1, -1}; a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t place);

// Finite places where (a, b)_v may differ from 1: primes dividing 2ab.
std::vector<std::int64_t> candidate_places(const Rational& a, const Rational& b);

struct QuaternionAlgebra {
    Rational a;  // i^2
    Rational b;  // j^2
};

struct RamifiedSet {
    std::vector<std::int64_t> primes;  // ascending
    bool infinite = false;

    std::size_t size() const { return primes.size() + (infinite ? 1 : 0); }
    // Product of the finite ramified primes.
    Integer discriminant() const;
    friend bool operator==(const RamifiedSet&, const RamifiedSet&) = default;
};

RamifiedSet ramified_set(const QuaternionAlgebra& algebra);

struct HashimotoData {
    std::int64_t delta = 0;
    std::int64_t q = 0;
    std::int64_t b_param = 0;
};

// Least prime q <= bound giving the model i^2 = -delta, j^2 = q, with the
// congruence and symbol conditions, and b_param the least root of
// b^2 = -delta^{-1} mod q.
HashimotoData hashimoto_search(std::int64_t delta, std::int64_t p, std::int64_t bound);

// Independent re-check of every condition; returns false with no exception.
bool verify_hashimoto(const HashimotoData& data, std::int64_t p);

struct Mat2 {
    Rational a, b, c, d;  // [[a, b], [c, d]]

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 scalar(const Rational& x) { return {x, 0, 0, x}; }
    Rational trace() const { return a + d; }
    Rational det() const { return a * d - b * c; }
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    Mat2 inverse() const;
    bool is_integral() const;
    bool is_scalar() const { return b == 0 && c == 0 && a == d; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(const Rational& s, const Mat2& x);
std::ostream& operator<<(std::ostream& os, const Mat2& m);

// Reduced trace of x * conj(y).
Rational trace_form(const Mat2& x, const Mat2& y);

// Membership in the split Eichler order of level N: integral, N | lower-left.
bool in_eichler_order(const Mat2& x, std::int64_t level);

struct MatrixEmbedding {
    Mat2 m;               // image of sqrt(d)
    std::int64_t d = 0;   // m^2 = d * I, d < 0
    std::int64_t level = 1;
};

void validate(const MatrixEmbedding& e);

// Fundamental discriminant of Q(sqrt(d)).
std::int64_t fundamental_discriminant_of(std::int64_t d);

// Least c > 0 with rho(O_{K,c}) = rho(K) cap R_N.
std::int64_t embedding_conductor(const MatrixEmbedding& e);

struct SkolemNoether {
    Mat2 u;           // u m = -m u, integral, content 1
    Rational u_square; // u^2 = u_square * I
};

SkolemNoether skolem_noether_complement(const MatrixEmbedding& e);

// (x + m x m^{-1}) / 2: projection onto Q + Q m along (Q + Q m) u.
Mat2 embedding_projection(const MatrixEmbedding& e, const Mat2& x);

}  // namespace amice
