#include "amice/modform.hpp"

#include <numeric>
#include <string>

#include "amice/error.hpp"

namespace amice {

namespace {

std::vector<Integer> truncated_product(const std::vector<Integer>& a, const std::vector<Integer>& b, std::size_t len) {
    std::vector<Integer> out(len, 0);
    for (std::size_t i = 0; i < len && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < len && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<Rational> to_rationals(const std::vector<Integer>& v) {
    return std::vector<Rational>(v.begin(), v.end());
}

void check_prime(std::int64_t p) {
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
}

}  // namespace

QExpansion::QExpansion(int weight, std::int64_t level, std::vector<Rational> nebentypus, std::vector<Rational> coeffs)
    : weight_(weight), level_(level), nebentypus_(std::move(nebentypus)), coeffs_(std::move(coeffs)) {
    if (level_ < 1) throw InvalidInput("level must be positive");
    if (coeffs_.empty()) throw InvalidInput("q-expansion needs at least the constant term");
    if (nebentypus_.size() != static_cast<std::size_t>(level_)) {
        throw InvalidInput("nebentypus needs one value per residue mod N");
    }
    for (std::int64_t a = 0; a < level_; ++a) {
        const Rational& v = nebentypus_[a];
        if (std::gcd(a, level_) != 1) {
            if (v != 0) throw InvalidInput("nebentypus must vanish off (Z/NZ)^x");
        } else if (v != 1 && v != -1) {
            throw InvalidInput("rational nebentypus values must be +-1");
        }
    }
    for (std::int64_t a = 1; a < level_; ++a) {
        for (std::int64_t b = 1; b < level_; ++b) {
            if (nebentypus_[a * b % level_] != nebentypus_[a] * nebentypus_[b]) {
                throw InvalidInput("nebentypus is not multiplicative");
            }
        }
    }
}

QExpansion::QExpansion(int weight, std::int64_t level, std::vector<Rational> coeffs)
    : QExpansion(weight, level,
                 [level] {
                     if (level < 1) throw InvalidInput("level must be positive");
                     std::vector<Rational> e(static_cast<std::size_t>(level), Rational(0));
                     for (std::int64_t a = 0; a < level; ++a)
                         if (std::gcd(a, level) == 1) e[a] = 1;
                     return e;
                 }(),
                 std::move(coeffs)) {}

Rational QExpansion::eps(std::int64_t n) const { return nebentypus_[mod_floor(n, level_)]; }

QExpansion QExpansion::with_coeffs(std::vector<Rational> coeffs) const {
    return QExpansion(weight_, level_, nebentypus_, std::move(coeffs));
}

QExpansion delta_form(std::size_t trunc) {
    // prod (1 - q^n) by Euler's pentagonal theorem, then the 24th power.
    const std::size_t len = trunc + 1;
    std::vector<Integer> eta(len, 0);
    for (long long k = 0;; ++k) {
        bool any = false;
        for (long long sign : {1LL, -1LL}) {
            long long kk = sign * k;
            long long e = kk * (3 * kk - 1) / 2;
            if (e < static_cast<long long>(len)) {
                eta[e] += (k % 2 == 0) ? 1 : -1;
                any = true;
            }
            if (k == 0) break;
        }
        if (!any) break;
    }
    std::vector<Integer> power(len, 0);
    power[0] = 1;
    std::vector<Integer> base = eta;
    for (unsigned e = 24; e > 0; e >>= 1U) {
        if (e & 1U) power = truncated_product(power, base, len);
        base = truncated_product(base, base, len);
    }
    std::vector<Integer> coeffs(len, 0);
    for (std::size_t n = 1; n < len; ++n) coeffs[n] = power[n - 1];
    return QExpansion(12, 1, to_rationals(coeffs));
}

Rational bernoulli(unsigned n) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0, B_1 = -1/2.
    std::vector<Rational> b(n + 1, Rational(0));
    b[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        Rational s = 0;
        for (unsigned j = 0; j < m; ++j) s += Rational(binomial(Integer(m + 1), j)) * b[j];
        b[m] = -s / Rational(m + 1);
    }
    return b[n];
}

QExpansion eisenstein(int k, std::size_t trunc) {
    if (k < 4 || k % 2 != 0) throw InvalidInput("Eisenstein series need even weight >= 4");
    const Rational c = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
    std::vector<Rational> coeffs(trunc + 1, Rational(0));
    coeffs[0] = 1;
    for (std::size_t d = 1; d <= trunc; ++d) {
        Integer dk = ipow(Integer(d), static_cast<unsigned>(k - 1));
        for (std::size_t n = d; n <= trunc; n += d) coeffs[n] += c * Rational(dk);
    }
    return QExpansion(k, 1, std::move(coeffs));
}

QExpansion u_op(const QExpansion& f, std::int64_t p) {
    check_prime(p);
    if (f.trunc() < static_cast<std::size_t>(p)) throw InvalidInput("U_p needs truncation >= p");
    const std::size_t out = f.trunc() / static_cast<std::size_t>(p);
    std::vector<Rational> c(out + 1);
    for (std::size_t n = 0; n <= out; ++n) c[n] = f[n * static_cast<std::size_t>(p)];
    return f.with_coeffs(std::move(c));
}

QExpansion v_op(const QExpansion& f, std::int64_t p) {
    check_prime(p);
    const auto step = static_cast<std::size_t>(p);
    std::vector<Rational> c(f.trunc() * step + 1, Rational(0));
    for (std::size_t n = 0; n <= f.trunc(); ++n) c[n * step] = f[n];
    return f.with_coeffs(std::move(c));
}

QExpansion t_op(const QExpansion& f, std::int64_t p) {
    QExpansion u = u_op(f, p);
    const Rational scale = f.eps(p) * Rational(ipow(Integer(p), static_cast<unsigned>(f.weight() - 1)));
    if (scale == 0) return u;
    QExpansion v = v_op(f, p);
    std::vector<Rational> c = u.coeffs();
    for (std::size_t n = 0; n < c.size(); ++n) c[n] += scale * v[n];
    return f.with_coeffs(std::move(c));
}

QExpansion p_deplete(const QExpansion& f, std::int64_t p) {
    check_prime(p);
    std::vector<Rational> c = f.coeffs();
    for (std::size_t n = 0; n < c.size(); n += static_cast<std::size_t>(p)) c[n] = 0;
    return f.with_coeffs(std::move(c));
}

QExpansion theta_op(const QExpansion& f, unsigned r) {
    std::vector<Rational> c = f.coeffs();
    for (std::size_t n = 0; n < c.size(); ++n) c[n] *= Rational(ipow(Integer(n), r));
    return f.with_coeffs(std::move(c));
}

Rational euler_factor(const EulerFactorInput& in, std::int64_t p) {
    check_prime(p);
    const Rational p2k(ipow(Integer(p), static_cast<unsigned>(2 * in.kappa)));
    return Rational(1) - in.a_p * in.chi_pi / p2k + in.eps_p * in.chi_pi * in.chi_pi / (p2k * p);
}

NearlyHolomorphic::NearlyHolomorphic(int weight, std::vector<std::vector<Rational>> table)
    : weight_(weight), table_(std::move(table)) {
    if (table_.empty() || table_.front().empty()) throw InvalidInput("empty nearly-holomorphic table");
    for (const auto& row : table_)
        if (row.size() != table_.front().size()) throw InvalidInput("ragged nearly-holomorphic table");
}

NearlyHolomorphic::NearlyHolomorphic(const QExpansion& f) : weight_(f.weight()) {
    for (const auto& a : f.coeffs()) table_.push_back({a});
}

NearlyHolomorphic operator*(const NearlyHolomorphic& f, const NearlyHolomorphic& g) {
    const std::size_t trunc = std::min(f.trunc(), g.trunc());
    const std::size_t depth = f.depth() + g.depth();
    std::vector<std::vector<Rational>> t(trunc + 1, std::vector<Rational>(depth + 1, Rational(0)));
    for (std::size_t n1 = 0; n1 <= trunc; ++n1)
        for (std::size_t j1 = 0; j1 <= f.depth(); ++j1) {
            if (f(n1, j1) == 0) continue;
            for (std::size_t n2 = 0; n1 + n2 <= trunc; ++n2)
                for (std::size_t j2 = 0; j2 <= g.depth(); ++j2) t[n1 + n2][j1 + j2] += f(n1, j1) * g(n2, j2);
        }
    return NearlyHolomorphic(f.weight() + g.weight(), std::move(t));
}

NearlyHolomorphic operator+(const NearlyHolomorphic& f, const NearlyHolomorphic& g) {
    if (f.weight() != g.weight()) throw InvalidInput("sum of nearly-holomorphic forms of different weight");
    const std::size_t trunc = std::min(f.trunc(), g.trunc());
    const std::size_t depth = std::max(f.depth(), g.depth());
    std::vector<std::vector<Rational>> t(trunc + 1, std::vector<Rational>(depth + 1, Rational(0)));
    for (std::size_t n = 0; n <= trunc; ++n)
        for (std::size_t j = 0; j <= depth; ++j) {
            if (j <= f.depth()) t[n][j] += f(n, j);
            if (j <= g.depth()) t[n][j] += g(n, j);
        }
    return NearlyHolomorphic(f.weight(), std::move(t));
}

NearlyHolomorphic maass_raise(const NearlyHolomorphic& f) {
    const int k = f.weight();
    std::vector<std::vector<Rational>> t(f.trunc() + 1, std::vector<Rational>(f.depth() + 2, Rational(0)));
    for (std::size_t n = 0; n <= f.trunc(); ++n)
        for (std::size_t j = 0; j <= f.depth(); ++j) {
            const Rational& c = f(n, j);
            if (c == 0) continue;
            t[n][j] += Rational(static_cast<long long>(n)) * c;
            t[n][j + 1] += Rational(static_cast<long long>(j) - k) * c;
        }
    return NearlyHolomorphic(k + 2, std::move(t));
}

NearlyHolomorphic maass_raise(const NearlyHolomorphic& f, unsigned r) {
    NearlyHolomorphic out = f;
    for (unsigned i = 0; i < r; ++i) out = maass_raise(out);
    return out;
}

Measure coefficient_measure(const QExpansion& f, std::int64_t p, int precision) {
    // Mahler coefficients of sum_n a_n delta_n: b_j = sum_n a_n C(n, j).
    const std::size_t len = f.trunc() + 1;
    std::vector<Rational> b(len, Rational(0));
    std::vector<Integer> row{Integer(1)};
    for (std::size_t n = 0; n < len; ++n) {
        if (n > 0) {
            std::vector<Integer> next(n + 1, Integer(1));
            for (std::size_t j = 1; j < n; ++j) next[j] = row[j - 1] + row[j];
            row = std::move(next);
        }
        if (f[n] == 0) continue;
        for (std::size_t j = 0; j <= n; ++j) b[j] += f[n] * Rational(row[j]);
    }
    std::vector<PadicScalar> mahler;
    mahler.reserve(len);
    for (const auto& x : b) {
        if (x != 0 && valuation(x, p) < 0) throw InvalidInput("coefficients must be p-integral");
        mahler.push_back(PadicScalar::from_rational(p, x, precision));
    }
    return Measure(p, std::move(mahler), true);
}

}  // namespace amice
