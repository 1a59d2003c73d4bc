#pragma once

#include <cstdint>
#include <vector>

#include "amice/integer.hpp"
#include "amice/measure.hpp"

namespace amice {

// sum_{n <= trunc} a_n q^n with weight k, level N and a nebentypus given by
// its (rational, hence +-1 or 0) values on residues mod N.
class QExpansion {
public:
    QExpansion(int weight, std::int64_t level, std::vector<Rational> nebentypus, std::vector<Rational> coeffs);
    // Trivial nebentypus mod N.
    QExpansion(int weight, std::int64_t level, std::vector<Rational> coeffs);

    int weight() const { return weight_; }
    std::int64_t level() const { return level_; }
    const std::vector<Rational>& nebentypus() const { return nebentypus_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    std::size_t trunc() const { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }

    // epsilon(n), zero when gcd(n, N) > 1.
    Rational eps(std::int64_t n) const;

    QExpansion with_coeffs(std::vector<Rational> coeffs) const;

private:
    int weight_;
    std::int64_t level_;
    std::vector<Rational> nebentypus_;
    std::vector<Rational> coeffs_;
};

// Delta = q prod (1 - q^n)^24, level 1, weight 12.
QExpansion delta_form(std::size_t trunc);
// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n, k >= 4 even.
QExpansion eisenstein(int k, std::size_t trunc);
Rational bernoulli(unsigned n);

// a_n -> a_{np}; trunc -> floor(trunc / p).
QExpansion u_op(const QExpansion& f, std::int64_t p);
// f(q^p); trunc -> p * trunc, so U V = id exactly.
QExpansion v_op(const QExpansion& f, std::int64_t p);
// U + eps(p) p^(k-1) V, with eps(p) = 0 for p | N.
QExpansion t_op(const QExpansion& f, std::int64_t p);
// (1 - VU): zero the coefficients at multiples of p.
QExpansion p_deplete(const QExpansion& f, std::int64_t p);
// a_n -> n^r a_n.
QExpansion theta_op(const QExpansion& f, unsigned r);

struct EulerFactorInput {
    Rational a_p;
    Rational eps_p;
    Rational chi_pi;
    int kappa;
};

// 1 - a_p chi p^(-2 kappa) + eps(p) chi^2 p^(-2 kappa - 1).
Rational euler_factor(const EulerFactorInput& in, std::int64_t p);

// sum_{n, j} c(n, j) q^n X^j with X = (4 pi y)^-1.
class NearlyHolomorphic {
public:
    NearlyHolomorphic(int weight, std::vector<std::vector<Rational>> table);
    explicit NearlyHolomorphic(const QExpansion& f);

    int weight() const { return weight_; }
    std::size_t trunc() const { return table_.size() - 1; }
    std::size_t depth() const { return table_.front().size() - 1; }  // largest power of X
    const Rational& operator()(std::size_t n, std::size_t j) const { return table_.at(n).at(j); }
    const std::vector<std::vector<Rational>>& table() const { return table_; }

    friend NearlyHolomorphic operator*(const NearlyHolomorphic& f, const NearlyHolomorphic& g);
    friend NearlyHolomorphic operator+(const NearlyHolomorphic& f, const NearlyHolomorphic& g);
    bool operator==(const NearlyHolomorphic&) const = default;

private:
    int weight_;
    std::vector<std::vector<Rational>> table_;
};

// delta_k = theta + X^2 d/dX - k X; raises the weight by 2.
NearlyHolomorphic maass_raise(const NearlyHolomorphic& f);
NearlyHolomorphic maass_raise(const NearlyHolomorphic& f, unsigned r);

// sum_n a_n delta_n: the finite measure whose r-th moment is sum_n n^r a_n,
// the constant term of theta^r f at q = 1. Needs p-integral coefficients.
Measure coefficient_measure(const QExpansion& f, std::int64_t p, int precision);

}  // namespace amice
