#include "amice/quaternion.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

#include "amice/error.hpp"

namespace amice {

namespace {

// Integer in the same square class as x: num * den.
Integer square_class_integer(const Rational& x) {
    return boost::multiprecision::numerator(x) * boost::multiprecision::denominator(x);
}

std::pair<int, Integer> split_valuation(Integer n, std::int64_t p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return {v, n};
}

int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

std::int64_t residue(const Integer& n, std::int64_t m) { return to_int64(mod_floor(n, Integer(m))); }

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t place) {
    if (a == 0 || b == 0) throw InvalidInput("Hilbert symbol of zero");
    if (place == kInfinitePlace) return (a < 0 && b < 0) ? -1 : 1;
    if (place < 0 || !is_prime(place)) throw InvalidInput("place must be a prime or infinity");
    const std::int64_t p = place;
    auto [alpha, u] = split_valuation(square_class_integer(a), p);
    auto [beta, v] = split_valuation(square_class_integer(b), p);
    if (p == 2) {
        const int eps_u = residue(u, 4) == 3 ? 1 : 0;
        const int eps_v = residue(v, 4) == 3 ? 1 : 0;
        const std::int64_t u8 = residue(u, 8), v8 = residue(v, 8);
        const int omega_u = (u8 == 3 || u8 == 5) ? 1 : 0;
        const int omega_v = (v8 == 3 || v8 == 5) ? 1 : 0;
        return sign_pow(eps_u * eps_v + alpha * omega_v + beta * omega_u);
    }
    const int eps_p = static_cast<int>(((p - 1) / 2) % 2);
    int out = sign_pow(alpha * beta * eps_p);
    if (beta % 2 == 1) out *= legendre(residue(u, p), p);
    if (alpha % 2 == 1) out *= legendre(residue(v, p), p);
    return out;
}

std::vector<std::int64_t> candidate_places(const Rational& a, const Rational& b) {
    if (a == 0 || b == 0) throw InvalidInput("Hilbert symbol of zero");
    std::set<std::int64_t> primes{2};
    for (const Integer& n : {square_class_integer(a), square_class_integer(b)})
        for (const auto& [prime, e] : factor(n)) primes.insert(to_int64(prime));
    return {primes.begin(), primes.end()};
}

Integer RamifiedSet::discriminant() const {
    Integer out = 1;
    for (auto p : primes) out *= p;
    return out;
}

RamifiedSet ramified_set(const QuaternionAlgebra& algebra) {
    RamifiedSet out;
    for (auto p : candidate_places(algebra.a, algebra.b))
        if (hilbert_symbol(algebra.a, algebra.b, p) == -1) out.primes.push_back(p);
    out.infinite = hilbert_symbol(algebra.a, algebra.b, kInfinitePlace) == -1;
    if (out.size() % 2 != 0) throw Error("ramified set of odd cardinality (product formula violated)");
    return out;
}

namespace {

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (const auto& [p, e] : factor(n)) out.push_back(p);
    return out;
}

void validate_delta(std::int64_t delta) {
    if (delta <= 1) throw InvalidInput("Delta must be a product of an even, nonzero number of distinct primes");
    auto f = factor(delta);
    bool squarefree = std::all_of(f.begin(), f.end(), [](const auto& pe) { return pe.second == 1; });
    if (!squarefree || f.size() % 2 != 0) {
        throw InvalidInput("Delta must be a product of an even, nonzero number of distinct primes");
    }
}

bool hashimoto_conditions(std::int64_t delta, std::int64_t q, std::int64_t p) {
    if (!is_prime(q) || q == p || delta % q == 0) return false;
    if (delta % 2 == 0 ? q % 8 != 5 : q % 4 != 1) return false;
    if (legendre(q % p, p) != 1) return false;
    RamifiedSet ram = ramified_set({Rational(-delta), Rational(q)});
    return !ram.infinite && ram.primes == prime_divisors(delta);
}

}  // namespace

HashimotoData hashimoto_search(std::int64_t delta, std::int64_t p, std::int64_t bound) {
    validate_delta(delta);
    if (!is_prime(p) || p == 2 || delta % p == 0) throw InvalidInput("p must be an odd prime not dividing Delta");
    for (std::int64_t q = 3; q <= bound; q += 2) {
        if (!hashimoto_conditions(delta, q, p)) continue;
        const std::int64_t target = mod_floor(-to_int64(inverse_mod(Integer(delta), Integer(q))), q);
        auto root = sqrt_mod_prime(target, q);
        if (!root) throw Error("symbol conditions hold but -1/Delta is not a square mod q");
        HashimotoData out{delta, q, *root};
        if (!verify_hashimoto(out, p)) throw Error("Hashimoto data failed re-verification");
        return out;
    }
    throw SearchExhausted("no admissible q <= " + std::to_string(bound));
}

bool verify_hashimoto(const HashimotoData& data, std::int64_t p) {
    const std::int64_t q = data.q, delta = data.delta;
    if (!is_prime(q) || !is_prime(p)) return false;
    if (delta % 2 == 0 ? q % 8 != 5 : q % 4 != 1) return false;
    if (powmod(mod_floor(q, p), (p - 1) / 2, p) != 1) return false;  // Euler's criterion
    Integer check = Integer(data.b_param) * data.b_param * delta + 1;
    if (mod_floor(check, Integer(q)) != 0) return false;
    std::set<std::int64_t> want;
    for (auto l : prime_divisors(delta)) want.insert(l);
    for (auto v : candidate_places(Rational(q), Rational(-delta))) {
        if ((hilbert_symbol(Rational(q), Rational(-delta), v) == -1) != want.contains(v)) return false;
    }
    return hilbert_symbol(Rational(q), Rational(-delta), kInfinitePlace) == 1;
}

Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
Mat2 operator*(const Rational& s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }

Mat2 Mat2::inverse() const {
    Rational dt = det();
    if (dt == 0) throw InvalidInput("singular matrix");
    return (Rational(1) / dt) * adjugate();
}

bool Mat2::is_integral() const {
    for (const Rational* x : {&a, &b, &c, &d})
        if (boost::multiprecision::denominator(*x) != 1) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << to_string(m.a) << "," << to_string(m.b) << "],[" << to_string(m.c) << ","
              << to_string(m.d) << "]]";
}

Rational trace_form(const Mat2& x, const Mat2& y) { return (x * y.adjugate()).trace(); }

bool in_eichler_order(const Mat2& x, std::int64_t level) {
    if (level < 1) throw InvalidInput("level must be positive");
    return x.is_integral() && boost::multiprecision::numerator(x.c) % level == 0;
}

void validate(const MatrixEmbedding& e) {
    if (e.d >= 0) throw InvalidInput("embedding needs d < 0");
    if (e.level < 1) throw InvalidInput("level must be positive");
    if (e.m.trace() != 0 || !(e.m * e.m == Mat2::scalar(e.d))) throw InvalidInput("matrix does not satisfy M^2 = d");
}

std::int64_t fundamental_discriminant_of(std::int64_t d) {
    if (d == 0) throw InvalidInput("d must be nonzero");
    std::int64_t core = d < 0 ? -1 : 1;
    for (const auto& [p, e] : factor(d))
        if (e % 2 == 1) core *= p;
    return mod_floor(core, 4) == 1 ? core : 4 * core;
}

namespace {

// sqrt(d_K) as a rational multiple t of m: d_K = t^2 d.
Rational sqrt_dk_scale(std::int64_t d, std::int64_t dk) {
    Rational ratio = Rational(dk) / Rational(d);
    Integer n = boost::multiprecision::numerator(ratio), m = boost::multiprecision::denominator(ratio);
    Integer sn = boost::multiprecision::sqrt(n), sm = boost::multiprecision::sqrt(m);
    if (sn * sn != n || sm * sm != m) throw Error("d_K / d is not a rational square");
    return Rational(sn, sm);
}

}  // namespace

std::int64_t embedding_conductor(const MatrixEmbedding& e) {
    validate(e);
    const std::int64_t dk = fundamental_discriminant_of(e.d);
    // omega = (d_K + sqrt(d_K)) / 2, the generator of O_K over Z.
    const Mat2 omega = Rational(1, 2) * (Mat2::scalar(dk) + sqrt_dk_scale(e.d, dk) * e.m);
    // y * omega lies in R_N for y in c Z: a subgroup of Z, so c is its
    // least positive element. c divides 2 * denominators * N.
    Integer den = 1;
    for (const Rational* x : {&omega.a, &omega.b, &omega.c, &omega.d})
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(*x));
    const std::int64_t limit = to_int64(den) * e.level;
    for (std::int64_t c = 1; c <= limit; ++c)
        if (in_eichler_order(Rational(c) * omega, e.level)) return c;
    throw Error("conductor search failed");
}

SkolemNoether skolem_noether_complement(const MatrixEmbedding& e) {
    validate(e);
    const Mat2& m = e.m;
    // For traceless u, m: u m + m u = tr(u m) I, so anticommuting means
    // 2 m_a u_a + m_c u_b + m_b u_c = 0 for u = [[u_a, u_b], [u_c, -u_a]].
    Integer den = boost::multiprecision::lcm(boost::multiprecision::denominator(m.a),
                                             boost::multiprecision::lcm(boost::multiprecision::denominator(m.b),
                                                                        boost::multiprecision::denominator(m.c)));
    const Integer A = boost::multiprecision::numerator(Rational(2 * m.a * den));
    const Integer B = boost::multiprecision::numerator(Rational(m.c * den));
    const Integer C = boost::multiprecision::numerator(Rational(m.b * den));
    Integer ua = 0, ub = 0, uc = 0;
    if (A == 0) {
        ua = 1;
    } else {
        // m_b m_c = d - m_a^2 < 0, so B, C are nonzero.
        Integer g = boost::multiprecision::gcd(B, C);
        ub = C / g;
        uc = -B / g;
        if (ub < 0) {
            ub = -ub;
            uc = -uc;
        }
    }
    SkolemNoether out;
    out.u = {Rational(ua), Rational(ub), Rational(uc), Rational(-ua)};
    if (!(out.u * m == Rational(-1) * (m * out.u))) throw Error("complement does not anticommute");
    const Mat2 sq = out.u * out.u;
    if (!sq.is_scalar() || sq.a == 0) throw Error("complement square is not a nonzero scalar");
    out.u_square = sq.a;
    return out;
}

Mat2 embedding_projection(const MatrixEmbedding& e, const Mat2& x) {
    validate(e);
    return Rational(1, 2) * (x + e.m * x * e.m.inverse());
}

}  // namespace amice
