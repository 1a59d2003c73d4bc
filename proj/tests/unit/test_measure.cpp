#include <gtest/gtest.h>

#include <random>

#include "amice/combinatorics.hpp"
#include "amice/error.hpp"
#include "amice/measure.hpp"

using namespace amice;

namespace {

constexpr int kPrec = 30;

// Finite measures are built from explicit atoms sum_k c_k delta_k; every
// expectation below is recomputed from the atoms directly.
struct Atoms {
    std::int64_t p;
    std::vector<Integer> weight;  // weight[k] at the point k

    Measure measure() const {
        std::vector<Integer> mahler(weight.size(), 0);
        for (std::size_t k = 0; k < weight.size(); ++k)
            for (std::size_t n = 0; n <= k; ++n) mahler[n] += weight[k] * binomial(Integer(k), n);
        return Measure::from_integers(p, mahler, kPrec);
    }
    Integer moment(int r) const {
        Integer m = 0;
        for (std::size_t k = 0; k < weight.size(); ++k) m += weight[k] * ipow(Integer(k), r);
        return m;
    }
    Integer cell(std::int64_t a, std::int64_t modulus) const {
        Integer m = 0;
        for (std::size_t k = 0; k < weight.size(); ++k)
            if (static_cast<std::int64_t>(k) % modulus == a) m += weight[k];
        return m;
    }
    Atoms units_only() const {
        Atoms out = *this;
        for (std::size_t k = 0; k < weight.size(); k += p) out.weight[k] = 0;
        return out;
    }
};

Atoms random_atoms(std::mt19937_64& rng, std::int64_t p, int size) {
    std::uniform_int_distribution<int> w(-20, 20);
    Atoms a{p, {}};
    for (int k = 0; k < size; ++k) a.weight.emplace_back(w(rng));
    return a;
}

PadicScalar pad(std::int64_t p, const Integer& n) { return PadicScalar::from_integer(p, n, kPrec); }

void expect_same_moments(const Measure& a, const Measure& b, int r_max) {
    auto ma = moment_sequence(a, r_max);
    auto mb = moment_sequence(b, r_max);
    for (int r = 0; r <= r_max; ++r) EXPECT_TRUE(ma[r].agrees_with(mb[r])) << "r=" << r;
}

}  // namespace

TEST(Measure, DiracExamples) {
    auto d1 = dirac(pad(5, 1), 6);
    EXPECT_TRUE(d1.finite());
    EXPECT_EQ(d1[0].residue(), 1);
    EXPECT_EQ(d1[1].residue(), 1);
    EXPECT_TRUE(d1[2].is_zero());
    EXPECT_EQ(moments(dirac(pad(5, 2), 6), 3).residue(), 8);
    auto d0 = dirac(pad(5, 0), 4);
    EXPECT_EQ(d0[0].residue(), 1);
    EXPECT_TRUE(d0[1].is_zero());
    EXPECT_FALSE(dirac(pad(5, -1), 6).finite());
    EXPECT_THROW(dirac(PadicScalar::from_rational(5, Rational(1, 5), 4), 3), InvalidInput);
}

TEST(Measure, MomentExamples) {
    auto mu = Measure::from_integers(7, {0, 1, 2}, kPrec);
    EXPECT_EQ(moments(mu, 2).residue(), 5);
    EXPECT_EQ(moments(mu, 0).residue(), 0);
    auto truncated = Measure::from_integers(7, {1, 2, 3}, kPrec, false);
    EXPECT_THROW(moments(truncated, 3), InvalidInput);
}

TEST(Measure, DiracMomentsArePowers) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> dist(-1000000, 1000000);
    for (int trial = 0; trial < 40; ++trial) {
        auto z = pad(3, dist(rng));
        auto mu = dirac(z, 11);
        for (int r = 0; r <= 10; ++r) EXPECT_TRUE(moments(mu, r).agrees_with(z.pow(r)));
    }
}

TEST(Measure, MahlerFromMoments) {
    std::vector<PadicScalar> b;
    for (int r = 0; r <= 6; ++r) b.push_back(pad(5, ipow(Integer(3), r)));
    auto mu = mahler_from_moments(b);
    for (int n = 0; n <= 6; ++n) EXPECT_TRUE(mu[n].agrees_with(pad(5, binomial(Integer(3), n))));
    EXPECT_EQ(mu[5].precision(), kPrec - 1);

    std::vector<PadicScalar> ones(5, pad(5, 1));
    // Constant moments are those of the Dirac mass at 1: C(1, n) = (1, 1, 0, ...).
    auto one = mahler_from_moments(ones);
    EXPECT_TRUE(one[0].agrees_with(pad(5, 1)));
    EXPECT_TRUE(one[1].agrees_with(pad(5, 1)));
    for (int n = 2; n < 5; ++n) EXPECT_TRUE(one[n].is_zero());

    // (delta_1 + delta_{-1})/2 has moments (1, 0, 1) and a_2 = 1/2.
    std::vector<PadicScalar> bad{pad(2, 1), pad(2, 0), pad(2, 1)};
    EXPECT_THROW(mahler_from_moments(bad), InvalidInput);
}

TEST(Measure, StirlingRoundTrip) {
    std::mt19937_64 rng(9);
    for (std::int64_t p : {3, 5, 7, 11}) {
        auto atoms = random_atoms(rng, p, 15);
        auto mu = atoms.measure();
        auto again = mahler_from_moments(moment_sequence(mu, 20));
        for (int n = 0; n <= 20; ++n) {
            auto expected = n < 15 ? mu[n] : PadicScalar::exact_zero(p);
            EXPECT_TRUE(again[n].agrees_with(expected));
            EXPECT_EQ(again[n].precision(), kPrec - factorial_valuation(n, p));
        }
        for (int r = 0; r <= 8; ++r) EXPECT_TRUE(moments(mu, r).agrees_with(pad(p, atoms.moment(r))));
    }
}

TEST(Measure, RestrictDiracs) {
    auto unit = dirac(pad(3, 2), 6);
    auto r = restrict_to_units(unit);
    expect_same_moments(r, unit, 8);
    auto non_unit = restrict_to_units(dirac(pad(3, 3), 6));
    for (const auto& a : non_unit.mahler()) EXPECT_TRUE(a.is_zero());
}

TEST(Measure, RestrictAgainstAtoms) {
    std::mt19937_64 rng(13);
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto atoms = random_atoms(rng, p, 12);
            auto r = restrict_to_units(atoms.measure());
            auto expected = atoms.units_only().measure();
            for (std::size_t n = 0; n < r.order(); ++n) EXPECT_TRUE(r[n].agrees_with(expected[n]));
            auto rr = restrict_to_units(r);
            for (std::size_t n = 0; n < r.order(); ++n) EXPECT_TRUE(rr[n].agrees_with(r[n]));
        }
    }
}

TEST(Measure, CellMasses) {
    auto d = dirac(pad(3, 2), 3);
    EXPECT_EQ(cell_mass(d, 2, 1).residue(), 1);
    EXPECT_TRUE(cell_mass(d, 0, 1).is_zero());
    EXPECT_TRUE(cell_mass(d, 1, 1).is_zero());

    std::mt19937_64 rng(17);
    for (std::int64_t p : {2, 3, 5}) {
        auto atoms = random_atoms(rng, p, 30);
        auto mu = atoms.measure();
        for (int level = 1; level <= 3; ++level) {
            auto masses = cell_masses(mu, level);
            std::int64_t modulus = static_cast<std::int64_t>(masses.size());
            auto total = PadicScalar::exact_zero(p);
            for (std::int64_t a = 0; a < modulus; ++a) {
                EXPECT_TRUE(masses[a].agrees_with(pad(p, atoms.cell(a, modulus))));
                total += masses[a];
            }
            EXPECT_TRUE(total.agrees_with(mu[0]));
        }
        auto r = restrict_to_units(mu);
        EXPECT_TRUE(cell_mass(r, 0, 1).is_zero());
        for (std::int64_t a = 1; a < p; ++a) EXPECT_TRUE(cell_mass(r, a, 1).agrees_with(cell_mass(mu, a, 1)));
    }
    EXPECT_THROW(cell_mass(d, 3, 1), InvalidInput);
}

TEST(Measure, IntegrateStep) {
    const std::int64_t p = 5;
    auto z = pad(p, 7);
    auto mu = dirac(z, 10);
    std::vector<PadicScalar> one(5, pad(p, 1)), units(5, pad(p, 1)), ident;
    units[0] = pad(p, 0);
    for (int a = 0; a < 5; ++a) ident.push_back(pad(p, a));
    EXPECT_TRUE(integrate_step(mu, one, 1).agrees_with(mu[0]));
    EXPECT_TRUE(integrate_step(mu, units, 1).agrees_with(pad(p, 1)));
    EXPECT_TRUE(integrate_step(mu, ident, 1).agrees_with(pad(p, 2)));
}

TEST(Measure, RestrictedMomentsFromCells) {
    // m_r(mu^x) against sum over unit cells of a^r mu(a + p^nu Z_p): the two
    // agree modulo p^nu since t^r is 1-Lipschitz.
    std::mt19937_64 rng(19);
    const std::int64_t p = 3;
    auto atoms = random_atoms(rng, p, 40);
    auto mu = atoms.measure();
    auto r = restrict_to_units(mu);
    for (int level = 1; level <= 3; ++level) {
        auto masses = cell_masses(r, level);
        for (int power = 0; power <= 4; ++power) {
            auto approx = PadicScalar::exact_zero(p);
            for (std::size_t a = 0; a < masses.size(); ++a) {
                if (a % p == 0) continue;
                approx += masses[a].scaled(ipow(Integer(a), power));
            }
            auto exact = moments(r, power);
            EXPECT_TRUE(exact.with_precision(level).agrees_with(approx.with_precision(level)));
        }
    }
}

TEST(Measure, TruncatedRestrictionBounds) {
    // Non-finite measure: the Dirac mass at -1 needs its whole Mahler tail.
    const std::int64_t p = 3;
    auto z = pad(p, -1);
    auto mu = dirac(z, 40);
    ASSERT_FALSE(mu.finite());
    auto r = restrict_to_units(mu, {.output_order = 10, .target_precision = 2});
    EXPECT_EQ(r.order(), 10u);
    for (std::size_t n = 0; n < 10; ++n) {
        EXPECT_EQ(r[n].precision(), std::min(kPrec, restriction_tail_bound(p, 40, n)));
        EXPECT_TRUE(r[n].agrees_with(mu[n]));  // -1 is a unit
    }
    EXPECT_THROW(restrict_to_units(mu, {.output_order = 40, .target_precision = 2}), PrecisionExhausted);

    auto w = restrict_to_units(dirac(pad(p, -3), 60), {.output_order = 8, .target_precision = 3});
    for (const auto& a : w.mahler()) EXPECT_TRUE(a.is_zero());

    auto cells = cell_masses(mu, 1, 2);
    EXPECT_TRUE(cells[2].agrees_with(pad(p, 1)));
    EXPECT_TRUE(cells[0].is_zero());
    EXPECT_THROW(cell_masses(mu, 3, 2), PrecisionExhausted);
}

TEST(Measure, RestrictionKernelBound) {
    // The stated tail valuations hold for every kernel entry up to order 60.
    for (std::int64_t p : {2, 3, 5}) {
        for (std::size_t order = 2; order <= 60; order += 7) {
            auto band = restriction_band_valuations(p, order);
            for (std::size_t n = 0; n + 1 < order; ++n) {
                // c_{order-1, n} is one of the entries a tail of length order-1 would omit.
                EXPECT_GE(band[n], restriction_tail_bound(p, order - 1, n)) << p << " " << order << " " << n;
            }
        }
    }
}

TEST(Measure, Pushforward) {
    const std::int64_t p = 7;
    auto prod = mult_pushforward(dirac(pad(p, 2), 3), dirac(pad(p, 3), 4), 8);
    EXPECT_TRUE(prod.finite());
    auto six = dirac(pad(p, 6), 7);
    for (std::size_t n = 0; n < prod.order(); ++n) EXPECT_TRUE(prod[n].agrees_with(six[n]));

    std::mt19937_64 rng(23);
    auto atoms = random_atoms(rng, p, 8);
    auto mu = atoms.measure();
    auto z = pad(p, 5);
    auto pushed = mult_pushforward(mu, dirac(z, 8), 10);
    for (int r = 0; r <= 10; ++r) EXPECT_TRUE(moments(pushed, r).agrees_with(moments(mu, r) * z.pow(r)));
}

TEST(Measure, PushforwardCommutesWithRestriction) {
    std::mt19937_64 rng(29);
    for (std::int64_t p : {3, 5}) {
        for (int trial = 0; trial < 5; ++trial) {
            auto a = random_atoms(rng, p, 5).measure();
            auto b = random_atoms(rng, p, 5).measure();
            auto lhs = restrict_to_units(mult_pushforward(a, b, 16));
            auto rhs = mult_pushforward(restrict_to_units(a), restrict_to_units(b), 16);
            ASSERT_TRUE(lhs.finite());
            expect_same_moments(lhs, rhs, 16);
        }
    }
}

TEST(Measure, Pairing) {
    const std::int64_t p = 7;
    std::vector<std::pair<Measure, Measure>> ones(3, {dirac(pad(p, 1), 3), dirac(pad(p, 1), 3)});
    auto mu = pairing_measure(ones, 6);
    expect_same_moments(mu, dirac(pad(p, 1), 3), 6);

    std::vector<std::pair<Measure, Measure>> inverse_pairs;
    for (long long z : {2, 3, 5}) {
        auto x = pad(p, z);
        inverse_pairs.emplace_back(dirac(x, 12), dirac(x.inverse(), 12));
    }
    auto inv = pairing_measure(inverse_pairs, 10);
    for (int r = 0; r <= 10; ++r) EXPECT_TRUE(moments(inv, r).agrees_with(pad(p, 1)));

    auto a = dirac(pad(p, 3), 5), b = dirac(pad(p, 4), 6);
    std::vector<std::pair<Measure, Measure>> single{{a, b}};
    expect_same_moments(pairing_measure(single, 12), mult_pushforward(a, b, 12), 12);

    std::vector<std::pair<Measure, Measure>> seven(7, {a, b});
    EXPECT_THROW(pairing_measure(seven, 4), InvalidInput);
}
