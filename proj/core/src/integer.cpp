#include "amice/integer.hpp"

#include <array>

#include "amice/error.hpp"

namespace amice {

namespace {

bool miller_rabin_witness(std::int64_t n, std::int64_t a, std::int64_t d, int s) {
    std::int64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t powmod(std::int64_t base, std::int64_t exponent, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = mod_floor(base, m);
    while (exponent > 0) {
        if (exponent & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exponent >>= 1;
    }
    return result;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    std::int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic below 3.3e24.
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

Integer ipow(const Integer& base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int valuation(Integer n, std::int64_t p) {
    if (n == 0) throw InvalidInput("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(const Rational& x, std::int64_t p) {
    return valuation(boost::multiprecision::numerator(x), p) -
           valuation(boost::multiprecision::denominator(x), p);
}

Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer old_r = mod_floor(a, m), r = m;
    Integer old_s = 1, s = 0;
    while (r != 0) {
        Integer q = old_r / r;
        Integer t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw InvalidInput("element is not invertible modulo " + to_string(m));
    return mod_floor(old_s, m);
}

int legendre(std::int64_t a, std::int64_t p) {
    a = mod_floor(a, p);
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int kronecker(std::int64_t d, std::int64_t n) {
    if (n <= 0) throw InvalidInput("kronecker symbol needs n > 0");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0) return 0;
        std::int64_t r = mod_floor(d, 8);
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol (d/n) for odd n.
    std::int64_t a = mod_floor(d, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::optional<std::int64_t> sqrt_mod_prime(std::int64_t a, std::int64_t p) {
    a = mod_floor(a, p);
    if (p == 2 || a == 0) return a;
    if (legendre(a, p) != 1) return std::nullopt;
    std::int64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::int64_t z = 2;
    while (legendre(z, p) != -1) ++z;
    std::int64_t m = s;
    std::int64_t c = powmod(z, q, p);
    std::int64_t t = powmod(a, q, p);
    std::int64_t r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::int64_t i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        std::int64_t b = c;
        for (std::int64_t j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return std::min(r, p - r);
}

std::vector<std::pair<Integer, int>> factor(Integer n) {
    if (n == 0) throw InvalidInput("cannot factor zero");
    if (n < 0) n = -n;
    std::vector<std::pair<Integer, int>> out;
    for (Integer q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) {
                n /= q;
                ++e;
            }
            out.emplace_back(q, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (auto& [q, e] : factor(Integer(n))) out.emplace_back(to_int64(q), e);
    return out;
}

Integer binomial(const Integer& n, unsigned k) {
    Integer num = 1;
    for (unsigned i = 0; i < k; ++i) num *= (n - i);
    return num / factorial(k);
}

Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& x) {
    const Integer& den = boost::multiprecision::denominator(x);
    if (den == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

Integer parse_integer(std::string_view text) {
    if (text.empty()) throw InvalidInput("empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw InvalidInput("malformed integer literal");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw InvalidInput("malformed integer literal: " + std::string(text));
        }
    }
    Integer n(std::string(text.substr(start)));
    return text[0] == '-' ? Integer(-n) : n;
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

std::int64_t to_int64(const Integer& n) {
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
        throw InvalidInput("integer does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(n);
}

}  // namespace amice
