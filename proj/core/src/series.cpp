#include "amice/series.hpp"

namespace amice {

TruncatedSeries<PadicScalar> binomial_series(const PadicScalar& z, std::size_t order) {
    if (order == 0) throw InvalidInput("binomial_series needs order >= 1");
    if (!z.is_zero() && z.valuation() < 0) throw InvalidInput("binomial_series needs z in Z_p");
    const std::int64_t p = z.prime();
    const int precision = std::min(z.precision(), PadicScalar::kMaxPrecision);
    // C(t, n) mod p^(M - e) depends only on t mod p^M when p^e > n.
    const Integer representative = z.residue();
    std::vector<PadicScalar> coeffs;
    coeffs.reserve(order);
    Integer falling = 1;
    Integer n_factorial = 1;
    int log_n = 0;
    Integer next_power = p;
    for (std::size_t n = 0; n < order; ++n) {
        if (n > 0) {
            falling *= representative - static_cast<long long>(n - 1);
            n_factorial *= static_cast<unsigned long long>(n);
            while (Integer(n) >= next_power) {
                ++log_n;
                next_power *= p;
            }
        }
        coeffs.push_back(PadicScalar::from_integer(p, falling / n_factorial, precision - log_n));
    }
    return TruncatedSeries<PadicScalar>(std::move(coeffs));
}

}  // namespace amice
