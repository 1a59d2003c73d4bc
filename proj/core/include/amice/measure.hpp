#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "amice/padic.hpp"

namespace amice {

// A bounded Z_p-valued measure on Z_p, stored by its Mahler coefficients
// a_n = int C(t, n) dmu(t) for n < order. When `finite` is set the list is
// the complete expansion (a_n = 0 for n >= order), i.e. the measure is a
// combination of Dirac masses at 0, ..., order - 1, and every operation on
// it is exact.
class Measure {
public:
    Measure(std::int64_t prime, std::vector<PadicScalar> mahler, bool finite);

    static Measure from_integers(std::int64_t prime, const std::vector<Integer>& mahler, int precision,
                                 bool finite = true);

    std::int64_t prime() const { return prime_; }
    std::size_t order() const { return mahler_.size(); }
    bool finite() const { return finite_; }
    const std::vector<PadicScalar>& mahler() const { return mahler_; }
    const PadicScalar& operator[](std::size_t n) const { return mahler_.at(n); }

    // Smallest absolute precision among the stored coefficients.
    int precision() const;

    // c * mu for an integral scalar c.
    Measure scaled(const PadicScalar& c) const;

private:
    std::int64_t prime_;
    std::vector<PadicScalar> mahler_;
    bool finite_;
};

// Mahler coefficients C(z, n); finite exactly when z is a nonnegative
// integer below the order.
Measure dirac(const PadicScalar& z, std::size_t order);

// m_r = int t^r dmu = sum_{n <= r} S(r, n) n! a_n. Exact: t^r is a polynomial.
PadicScalar moments(const Measure& mu, int r);
std::vector<PadicScalar> moment_sequence(const Measure& mu, int r_max);

// a_n = (1/n!) sum_i gamma_{n,i} b_i for n <= r_max; coefficient n loses
// v_p(n!) digits. The result is not flagged finite.
Measure mahler_from_moments(std::span<const PadicScalar> moments);

// Controls the handling of measures whose Mahler list is truncated.
struct TruncationPolicy {
    // Number of output coefficients (restriction only); defaults to the input order.
    std::optional<std::size_t> output_order;
    // Every returned value must be known at least modulo p^target_precision.
    int target_precision = 1;
};

// mu restricted to Z_p^x, via
//   a^x_n = a_n - sum_k a_k sum_{p | m} (-1)^(k-m) C(k, m) C(m, n).
// For a truncated measure the omitted tail sum_{k >= order} a_k c_{k,n} has
// valuation >= ceil((order - n)/(p - 1)) - 1, and coefficient n is capped there.
Measure restrict_to_units(const Measure& mu, const TruncationPolicy& policy = {});

// Guaranteed valuation of the omitted tail for coefficient n of the restriction.
int restriction_tail_bound(std::int64_t p, std::size_t order, std::size_t n);

// v_p(c_{order-1, n}) for n < order: the last band of the restriction kernel
// actually included (kInfiniteValuation where the entry vanishes).
std::vector<int> restriction_band_valuations(std::int64_t p, std::size_t order);

// mu(a + p^level Z_p) = sum_k a_k sum_{m = a mod p^level} (-1)^(k-m) C(k, m).
// For a truncated measure the tail has valuation >= ceil(order / phi(p^level)) - level.
PadicScalar cell_mass(const Measure& mu, const Integer& residue, int level, int target_precision = 1);
std::vector<PadicScalar> cell_masses(const Measure& mu, int level, int target_precision = 1);
int cell_tail_bound(std::int64_t p, std::size_t order, int level);

// sum_a phi(a) mu(a + p^level Z_p) for phi given on residues 0 .. p^level - 1.
PadicScalar integrate_step(const Measure& mu, std::span<const PadicScalar> phi, int level,
                           int target_precision = 1);

// m_*(mu1 (x) mu2): the measure whose r-th moment is m_r(mu1) m_r(mu2), r <= r_max.
Measure mult_pushforward(const Measure& mu1, const Measure& mu2, int r_max);

// (1/h) sum_s m_*(mu1_s (x) mu2_s) over h pairs; needs p not dividing h.
Measure pairing_measure(std::span<const std::pair<Measure, Measure>> pairs, int r_max);

}  // namespace amice
