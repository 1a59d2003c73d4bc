#pragma once

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <vector>

#include "amice/error.hpp"
#include "amice/integer.hpp"
#include "amice/padic.hpp"

namespace amice {

// Coefficient domains a TruncatedSeries may carry.
template <class R>
struct SeriesDomain;

template <>
struct SeriesDomain<Integer> {
    static constexpr std::string_view name = "int";
    static Integer zero_like(const Integer&) { return 0; }
    static void check_compatible(const Integer&, const Integer&) {}
    static bool topologically_nilpotent(const Integer& c) { return c == 0; }
};

template <>
struct SeriesDomain<Rational> {
    static constexpr std::string_view name = "rat";
    static Rational zero_like(const Rational&) { return 0; }
    static void check_compatible(const Rational&, const Rational&) {}
    static bool topologically_nilpotent(const Rational& c) { return c == 0; }
};

template <>
struct SeriesDomain<PadicScalar> {
    static constexpr std::string_view name = "padic";
    static PadicScalar zero_like(const PadicScalar& c) { return PadicScalar::exact_zero(c.prime()); }
    static void check_compatible(const PadicScalar& a, const PadicScalar& b) {
        if (a.prime() != b.prime()) throw InvalidInput("series coefficients over different primes");
    }
    static bool topologically_nilpotent(const PadicScalar& c) { return c.is_zero() || c.valuation() > 0; }
};

// sum_{n < order} c_n T^n; coefficients of degree >= order are unknown.
template <class R>
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw InvalidInput("a truncated series needs order >= 1");
        for (const auto& c : coeffs_) SeriesDomain<R>::check_compatible(coeffs_.front(), c);
    }

    std::size_t order() const { return coeffs_.size(); }
    const std::vector<R>& coeffs() const { return coeffs_; }
    const R& operator[](std::size_t n) const { return coeffs_.at(n); }

    TruncatedSeries truncated(std::size_t order) const {
        order = std::min(order, coeffs_.size());
        return TruncatedSeries(std::vector<R>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order)));
    }

private:
    std::vector<R> coeffs_;
};

template <class R>
TruncatedSeries<R> add(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    SeriesDomain<R>::check_compatible(f[0], g[0]);
    std::size_t n = std::min(f.order(), g.order());
    std::vector<R> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f[i] + g[i]);
    return TruncatedSeries<R>(std::move(out));
}

template <class R>
TruncatedSeries<R> mul(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    SeriesDomain<R>::check_compatible(f[0], g[0]);
    std::size_t n = std::min(f.order(), g.order());
    std::vector<R> out(n, SeriesDomain<R>::zero_like(f[0]));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; i + j < n; ++j) out[i + j] = out[i + j] + f[i] * g[j];
    }
    return TruncatedSeries<R>(std::move(out));
}

// f(g(T)). The inner constant term must be topologically nilpotent: zero
// for exact domains, positive valuation for p-adic ones. With a nonzero
// p-adic constant term the unknown tail of f still contributes, so
// coefficient n is capped at precision (order - n) * v(g_0); this needs
// integral coefficients throughout.
template <class R>
TruncatedSeries<R> compose(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    SeriesDomain<R>::check_compatible(f[0], g[0]);
    if (!SeriesDomain<R>::topologically_nilpotent(g[0])) {
        throw InvalidInput("compose needs an inner series with topologically nilpotent constant term");
    }
    std::size_t n = std::min(f.order(), g.order());
    TruncatedSeries<R> inner = g.truncated(n);
    std::vector<R> acc(n, SeriesDomain<R>::zero_like(f[0]));
    acc[0] = f[n - 1];
    TruncatedSeries<R> result(acc);
    for (std::size_t k = n - 1; k-- > 0;) {
        result = mul(result, inner);
        std::vector<R> c = result.coeffs();
        c[0] = c[0] + f[k];
        result = TruncatedSeries<R>(std::move(c));
    }
    if constexpr (std::is_same_v<R, PadicScalar>) {
        if (!g[0].is_zero()) {
            auto integral = [](const PadicScalar& x) { return x.is_zero() || x.valuation() >= 0; };
            for (std::size_t i = 0; i < n; ++i) {
                if (!integral(f[i]) || !integral(g[i])) {
                    throw InvalidInput("compose with nonzero constant term needs integral coefficients");
                }
            }
            std::vector<R> c = result.coeffs();
            for (std::size_t i = 0; i < n; ++i) {
                c[i] = c[i].with_precision(static_cast<int>(n - i) * g[0].valuation());
            }
            result = TruncatedSeries<R>(std::move(c));
        }
    }
    return result;
}

// The Amice series (1+T)^z = sum_n C(z, n) T^n for z in Z_p. Coefficient n
// is known modulo p^(M - floor(log_p n)) when z is known modulo p^M.
TruncatedSeries<PadicScalar> binomial_series(const PadicScalar& z, std::size_t order);

}  // namespace amice
