#include "amice/measure.hpp"

#include <algorithm>
#include <string>

#include "amice/combinatorics.hpp"
#include "amice/error.hpp"
#include "amice/series.hpp"

namespace amice {

namespace {

Integer prime_power(std::int64_t p, int e) { return ipow(Integer(p), static_cast<unsigned>(e)); }

int ceil_div(long long a, long long b) { return static_cast<int>((a + b - 1) / b); }

void check_integral(const PadicScalar& c, const char* what) {
    if (!c.is_zero() && c.valuation() < 0) throw InvalidInput(std::string(what) + " must be integral");
}

// Index of the last nonzero Mahler coefficient: a finite measure of degree d
// is carried by the atoms 0, ..., d.
std::size_t mahler_degree(const Measure& mu) {
    std::size_t d = mu.order();
    while (d > 1 && mu[d - 1].is_zero()) --d;
    return d - 1;
}

// Number of Mahler coefficients needed for the pushforward of two finite measures.
std::size_t product_support(const Measure& a, const Measure& b) {
    return mahler_degree(a) * mahler_degree(b) + 1;
}

// c_{k,n} = sum_{p | m, n <= m <= k} (-1)^(k-m) C(k, m) C(m, n), k < order.
IntegerTable restriction_kernel(std::int64_t p, std::size_t order) {
    const int size = static_cast<int>(order);
    IntegerTable binom = binomial_table(size > 0 ? size - 1 : 0);
    IntegerTable kernel(order);
    for (int k = 0; k < size; ++k) {
        kernel[k].assign(static_cast<std::size_t>(k) + 1, Integer(0));
        for (int m = 0; m <= k; m += static_cast<int>(p)) {
            Integer outer = ((k - m) % 2 == 0) ? binom[k][m] : Integer(-binom[k][m]);
            for (int n = 0; n <= m; ++n) kernel[k][n] += outer * binom[m][n];
        }
    }
    return kernel;
}

}  // namespace

Measure::Measure(std::int64_t prime, std::vector<PadicScalar> mahler, bool finite)
    : prime_(prime), mahler_(std::move(mahler)), finite_(finite) {
    require_prime(prime_);
    if (mahler_.empty()) throw InvalidInput("a measure needs order >= 1");
    for (const auto& a : mahler_) {
        if (a.prime() != prime_) throw InvalidInput("Mahler coefficient over a different prime");
        check_integral(a, "Mahler coefficients of a bounded measure");
    }
}

Measure Measure::from_integers(std::int64_t prime, const std::vector<Integer>& mahler, int precision, bool finite) {
    std::vector<PadicScalar> coeffs;
    coeffs.reserve(mahler.size());
    for (const auto& a : mahler) coeffs.push_back(PadicScalar::from_integer(prime, a, precision));
    return Measure(prime, std::move(coeffs), finite);
}

int Measure::precision() const {
    int m = PadicScalar::kExactPrecision;
    for (const auto& a : mahler_) m = std::min(m, a.precision());
    return m;
}

Measure Measure::scaled(const PadicScalar& c) const {
    check_integral(c, "measure scale factor");
    std::vector<PadicScalar> out;
    out.reserve(mahler_.size());
    for (const auto& a : mahler_) out.push_back(a * c);
    return Measure(prime_, std::move(out), finite_);
}

Measure dirac(const PadicScalar& z, std::size_t order) {
    if (!z.is_zero() && z.valuation() < 0) throw InvalidInput("Dirac point must lie in Z_p");
    auto series = binomial_series(z, order);
    bool finite = false;
    if (z.is_zero()) {
        finite = true;
    } else {
        // A small nonnegative integer is recognised from its representative.
        Integer rep = z.residue();
        finite = rep < Integer(order) && z.precision() > 0 &&
                 prime_power(z.prime(), std::min(z.precision(), PadicScalar::kMaxPrecision)) > Integer(order);
    }
    std::vector<PadicScalar> coeffs = series.coeffs();
    if (finite) {
        // Coefficients past z are exactly zero.
        Integer rep = z.is_zero() ? Integer(0) : z.residue();
        for (std::size_t n = static_cast<std::size_t>(rep) + 1; n < coeffs.size(); ++n) {
            coeffs[n] = PadicScalar::exact_zero(z.prime());
        }
    }
    return Measure(z.prime(), std::move(coeffs), finite);
}

std::vector<PadicScalar> moment_sequence(const Measure& mu, int r_max) {
    if (r_max < 0) throw InvalidInput("moment index must be nonnegative");
    if (!mu.finite() && static_cast<std::size_t>(r_max) >= mu.order()) {
        throw InvalidInput("moment " + std::to_string(r_max) + " needs order > r on a truncated measure");
    }
    IntegerTable s2 = stirling_second_table(r_max);
    std::vector<PadicScalar> out;
    out.reserve(static_cast<std::size_t>(r_max) + 1);
    for (int r = 0; r <= r_max; ++r) {
        PadicScalar m = PadicScalar::exact_zero(mu.prime());
        Integer n_factorial = 1;
        const int top = std::min<int>(r, static_cast<int>(mu.order()) - 1);
        for (int n = 0; n <= top; ++n) {
            if (n > 0) n_factorial *= n;
            m += mu[n].scaled(s2[r][n] * n_factorial);
        }
        out.push_back(m);
    }
    return out;
}

PadicScalar moments(const Measure& mu, int r) { return moment_sequence(mu, r).back(); }

Measure mahler_from_moments(std::span<const PadicScalar> moments) {
    if (moments.empty()) throw InvalidInput("mahler_from_moments needs at least one moment");
    const std::int64_t p = moments.front().prime();
    const int r_max = static_cast<int>(moments.size()) - 1;
    IntegerTable s1 = stirling_first_table(r_max);
    std::vector<PadicScalar> mahler;
    mahler.reserve(moments.size());
    Integer n_factorial = 1;
    for (int n = 0; n <= r_max; ++n) {
        if (n > 0) n_factorial *= n;
        PadicScalar sum = PadicScalar::exact_zero(p);
        for (int i = 0; i <= n; ++i) sum += moments[i].scaled(s1[n][i]);
        PadicScalar a = sum.divided(n_factorial);
        if (!a.is_zero() && a.valuation() < 0) {
            throw InvalidInput("moments do not come from a measure: Mahler coefficient " + std::to_string(n) +
                               " has valuation " + std::to_string(a.valuation()));
        }
        mahler.push_back(std::move(a));
    }
    return Measure(p, std::move(mahler), false);
}

int restriction_tail_bound(std::int64_t p, std::size_t order, std::size_t n) {
    if (n >= order) return 0;
    return ceil_div(static_cast<long long>(order - n), p - 1) - 1;
}

std::vector<int> restriction_band_valuations(std::int64_t p, std::size_t order) {
    require_prime(p);
    if (order == 0) return {};
    IntegerTable kernel = restriction_kernel(p, order);
    const auto& band = kernel.back();
    std::vector<int> out;
    out.reserve(band.size());
    for (const auto& c : band) out.push_back(c == 0 ? PadicScalar::kInfiniteValuation : valuation(c, p));
    return out;
}

Measure restrict_to_units(const Measure& mu, const TruncationPolicy& policy) {
    const std::int64_t p = mu.prime();
    const std::size_t order = mu.order();
    std::size_t out_order = policy.output_order.value_or(order);
    if (out_order == 0 || out_order > order) throw InvalidInput("restriction output order out of range");
    if (mu.finite()) out_order = order;
    IntegerTable kernel = restriction_kernel(p, order);
    std::vector<PadicScalar> out;
    out.reserve(out_order);
    for (std::size_t n = 0; n < out_order; ++n) {
        PadicScalar removed = PadicScalar::exact_zero(p);
        for (std::size_t k = n; k < order; ++k) removed += mu[k].scaled(kernel[k][n]);
        PadicScalar a = mu[n] - removed;
        if (!mu.finite()) {
            int bound = restriction_tail_bound(p, order, n);
            if (bound < policy.target_precision) {
                throw PrecisionExhausted("restriction coefficient " + std::to_string(n) + " is only known modulo p^" +
                                         std::to_string(bound) + " at order " + std::to_string(order));
            }
            a = a.with_precision(bound);
        }
        out.push_back(std::move(a));
    }
    return Measure(p, std::move(out), mu.finite());
}

int cell_tail_bound(std::int64_t p, std::size_t order, int level) {
    long long phi = static_cast<long long>(to_int64(prime_power(p, level - 1))) * (p - 1);
    return ceil_div(static_cast<long long>(order), phi) - level;
}

std::vector<PadicScalar> cell_masses(const Measure& mu, int level, int target_precision) {
    if (level < 1) throw InvalidInput("cell level must be >= 1");
    const std::int64_t p = mu.prime();
    const Integer modulus_big = prime_power(p, level);
    if (modulus_big > Integer(1) << 22) throw InvalidInput("too many cells");
    const auto modulus = static_cast<std::size_t>(modulus_big);
    const int order = static_cast<int>(mu.order());
    int bound = PadicScalar::kExactPrecision;
    if (!mu.finite()) {
        bound = cell_tail_bound(p, mu.order(), level);
        if (bound < target_precision) {
            throw PrecisionExhausted("cell masses at level " + std::to_string(level) + " are only known modulo p^" +
                                     std::to_string(bound) + " at order " + std::to_string(order));
        }
    }
    std::vector<PadicScalar> masses(modulus, PadicScalar::exact_zero(p));
    std::vector<Integer> row{Integer(1)};
    for (int k = 0; k < order; ++k) {
        if (k > 0) {
            std::vector<Integer> next(static_cast<std::size_t>(k) + 1, Integer(1));
            for (int m = 1; m < k; ++m) next[m] = row[m - 1] + row[m];
            row = std::move(next);
        }
        std::vector<Integer> bucket(std::min<std::size_t>(modulus, static_cast<std::size_t>(k) + 1), Integer(0));
        for (int m = 0; m <= k; ++m) {
            const Integer& c = row[m];
            bucket[static_cast<std::size_t>(m) % modulus] += ((k - m) % 2 == 0) ? c : Integer(-c);
        }
        for (std::size_t a = 0; a < bucket.size(); ++a) {
            if (bucket[a] != 0) masses[a] += mu[k].scaled(bucket[a]);
        }
    }
    for (auto& m : masses) m = m.with_precision(bound);
    return masses;
}

PadicScalar cell_mass(const Measure& mu, const Integer& residue, int level, int target_precision) {
    if (level < 1) throw InvalidInput("cell level must be >= 1");
    Integer modulus = prime_power(mu.prime(), level);
    if (residue < 0 || residue >= modulus) throw InvalidInput("cell residue out of range");
    return cell_masses(mu, level, target_precision).at(static_cast<std::size_t>(residue));
}

PadicScalar integrate_step(const Measure& mu, std::span<const PadicScalar> phi, int level, int target_precision) {
    auto masses = cell_masses(mu, level, target_precision);
    if (phi.size() != masses.size()) throw InvalidInput("step function must have p^level values");
    PadicScalar sum = PadicScalar::exact_zero(mu.prime());
    for (std::size_t a = 0; a < masses.size(); ++a) sum += phi[a] * masses[a];
    return sum;
}

Measure mult_pushforward(const Measure& mu1, const Measure& mu2, int r_max) {
    if (mu1.prime() != mu2.prime()) throw InvalidInput("pushforward of measures over different primes");
    auto m1 = moment_sequence(mu1, r_max);
    auto m2 = moment_sequence(mu2, r_max);
    std::vector<PadicScalar> product;
    product.reserve(m1.size());
    for (std::size_t r = 0; r < m1.size(); ++r) product.push_back(m1[r] * m2[r]);
    Measure out = mahler_from_moments(product);
    const std::size_t support = product_support(mu1, mu2);
    if (mu1.finite() && mu2.finite() && support <= out.order()) {
        std::vector<PadicScalar> head(out.mahler().begin(), out.mahler().begin() + static_cast<std::ptrdiff_t>(support));
        return Measure(out.prime(), std::move(head), true);
    }
    return out;
}

Measure pairing_measure(std::span<const std::pair<Measure, Measure>> pairs, int r_max) {
    if (pairs.empty()) throw InvalidInput("pairing_measure needs at least one pair");
    const std::int64_t p = pairs.front().first.prime();
    const auto h = static_cast<long long>(pairs.size());
    if (h % p == 0) throw InvalidInput("number of classes divisible by p");
    std::vector<PadicScalar> sum(static_cast<std::size_t>(r_max) + 1, PadicScalar::exact_zero(p));
    bool finite = true;
    std::size_t support = 1;
    for (const auto& [mu1, mu2] : pairs) {
        if (mu1.prime() != p || mu2.prime() != p) throw InvalidInput("paired measures over different primes");
        auto m1 = moment_sequence(mu1, r_max);
        auto m2 = moment_sequence(mu2, r_max);
        for (std::size_t r = 0; r < sum.size(); ++r) sum[r] += m1[r] * m2[r];
        finite = finite && mu1.finite() && mu2.finite();
        support = std::max(support, product_support(mu1, mu2));
    }
    for (auto& s : sum) s = s.divided(Integer(h));
    Measure out = mahler_from_moments(sum);
    if (finite && support <= out.order()) {
        std::vector<PadicScalar> head(out.mahler().begin(), out.mahler().begin() + static_cast<std::ptrdiff_t>(support));
        return Measure(p, std::move(head), true);
    }
    return out;
}

}  // namespace amice
