#include <gtest/gtest.h>

#include <random>

#include "amice/error.hpp"
#include "amice/quaternion.hpp"

using namespace amice;

namespace {

// Divide out square factors; the square class is unchanged.
std::int64_t squarefree_part(std::int64_t n) {
    std::int64_t out = n < 0 ? -1 : 1;
    for (const auto& [p, e] : factor(n))
        if (e % 2 == 1) out *= p;
    return out;
}

// Local isotropy of z^2 = a x^2 + b y^2 over Q_p for squarefree a, b by brute
// force: a primitive zero mod p^k with a coordinate of small enough
// derivative valuation lifts by Hensel; every Q_p zero produces one.
int solvability_oracle(std::int64_t a, std::int64_t b, std::int64_t p) {
    const int k = p == 2 ? 5 : 3;
    std::int64_t mod = 1;
    for (int i = 0; i < k; ++i) mod *= p;
    auto val = [&](std::int64_t n) {
        n = mod_floor(n, mod);
        if (n == 0) return k;
        int v = 0;
        while (n % p == 0) {
            n /= p;
            ++v;
        }
        return v;
    };
    for (std::int64_t x = 0; x < mod; ++x)
        for (std::int64_t y = 0; y < mod; ++y)
            for (std::int64_t z = 0; z < mod; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                if (mod_floor(a * x * x + b * y * y - z * z, mod) != 0) continue;
                int t = std::min({val(2 * a * x), val(2 * b * y), val(2 * z)});
                if (2 * t + 1 <= k) return 1;
            }
    return -1;
}

MatrixEmbedding random_embedding(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ra(-6, 6), rb(1, 8), rc(-40, -1);
    for (;;) {
        int a = ra(rng), b = rb(rng), c = rc(rng);
        if (a * a + b * c < 0) return {Mat2{a, b, c, -a}, a * a + b * c, 1};
    }
}

Mat2 random_unimodular(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> step(-3, 3), pick(0, 1);
    Mat2 g = Mat2::identity();
    for (int i = 0; i < 4; ++i) {
        int t = step(rng);
        g = g * (pick(rng) ? Mat2{1, t, 0, 1} : Mat2{1, 0, t, 1});
    }
    return g;
}

}  // namespace

TEST(Hilbert, StandardTable) {
    EXPECT_EQ(hilbert_symbol(-1, -1, 2), -1);
    EXPECT_EQ(hilbert_symbol(-1, -1, kInfinitePlace), -1);
    for (std::int64_t p : {3, 5, 7, 11, 13}) EXPECT_EQ(hilbert_symbol(-1, -1, p), 1);
    EXPECT_EQ(hilbert_symbol(5, -6, 3), -1);
    EXPECT_EQ(hilbert_symbol(2, 3, 3), -1);
    EXPECT_EQ(hilbert_symbol(Rational(1, 4), 7, 7), 1);
    EXPECT_EQ(hilbert_symbol(Rational(2, 9), Rational(3, 5), 3), hilbert_symbol(2, 15, 3));
    EXPECT_THROW(hilbert_symbol(0, 1, 2), InvalidInput);
    EXPECT_THROW(hilbert_symbol(1, 1, 4), InvalidInput);
}

TEST(Hilbert, MatchesLocalSolvability) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dist(-60, 60);
    for (std::int64_t p : {2, 3, 5}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::int64_t a = 0, b = 0;
            while (a == 0) {
                std::int64_t n = dist(rng);
                if (n != 0) a = squarefree_part(n);
            }
            while (b == 0) {
                std::int64_t n = dist(rng);
                if (n != 0) b = squarefree_part(n);
            }
            EXPECT_EQ(hilbert_symbol(a, b, p), solvability_oracle(a, b, p)) << a << " " << b << " p=" << p;
        }
    }
}

TEST(Hilbert, AxiomsAndProductFormula) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> num(-500, 500), den(1, 40);
    auto draw = [&] {
        std::int64_t n = 0;
        while (n == 0) n = num(rng);
        return Rational(n, den(rng));
    };
    for (int trial = 0; trial < 500; ++trial) {
        Rational a = draw(), b = draw(), c = draw();
        int product = hilbert_symbol(a, b, kInfinitePlace);
        for (auto v : candidate_places(a, b)) product *= hilbert_symbol(a, b, v);
        EXPECT_EQ(product, 1) << a << " " << b;
        for (std::int64_t v : {std::int64_t(2), std::int64_t(3), std::int64_t(5), std::int64_t(7), kInfinitePlace}) {
            EXPECT_EQ(hilbert_symbol(a, b, v), hilbert_symbol(b, a, v));
            EXPECT_EQ(hilbert_symbol(a, b * c, v), hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
            EXPECT_EQ(hilbert_symbol(a, -a, v), 1);
            EXPECT_EQ(hilbert_symbol(a, 1 - a == 0 ? Rational(1) : 1 - a, v), 1);
        }
        EXPECT_EQ(ramified_set({a, b}).size() % 2, 0u);
    }
}

TEST(Quaternion, RamifiedSets) {
    auto hamilton = ramified_set({-1, -1});
    EXPECT_EQ(hamilton.primes, std::vector<std::int64_t>{2});
    EXPECT_TRUE(hamilton.infinite);
    auto split = ramified_set({1, 7});
    EXPECT_EQ(split.size(), 0u);
    EXPECT_EQ(split.discriminant(), 1);
    auto h3 = ramified_set({-1, -3});
    EXPECT_EQ(h3.primes, std::vector<std::int64_t>{3});
    EXPECT_TRUE(h3.infinite);
    auto d6 = ramified_set({-6, 5});
    EXPECT_EQ(d6.primes, (std::vector<std::int64_t>{2, 3}));
    EXPECT_FALSE(d6.infinite);
    EXPECT_EQ(d6.discriminant(), 6);
}

TEST(Quaternion, HashimotoSix) {
    auto h = hashimoto_search(6, 11, 1000);
    EXPECT_EQ(h.q, 5);
    EXPECT_EQ(h.b_param, 2);
    EXPECT_TRUE(verify_hashimoto(h, 11));
    // Hand checks.
    EXPECT_EQ((2 * 2 * 6 + 1) % 5, 0);
    EXPECT_EQ(5 % 8, 5);
    EXPECT_EQ((4 * 4) % 11, 5);
    EXPECT_EQ(hilbert_symbol(5, -6, 2), -1);
    EXPECT_EQ(hilbert_symbol(5, -6, 3), -1);
    EXPECT_EQ(hilbert_symbol(5, -6, 5), 1);
    EXPECT_FALSE(verify_hashimoto({6, 5, 1}, 11));
    EXPECT_FALSE(verify_hashimoto({6, 13, 2}, 11));
}

TEST(Quaternion, HashimotoPostconditionSweep) {
    for (std::int64_t delta : {6, 10, 14, 15, 21, 22, 33, 35, 210, 330}) {
        for (std::int64_t p : {7, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
            if (delta % p == 0) continue;
            auto h = hashimoto_search(delta, p, 100000);
            EXPECT_TRUE(verify_hashimoto(h, p)) << delta << " " << p;
            RamifiedSet ram = ramified_set({Rational(-delta), Rational(h.q)});
            std::vector<std::int64_t> primes;
            for (const auto& [l, e] : factor(delta)) primes.push_back(l);
            EXPECT_EQ(ram.primes, primes);
            EXPECT_FALSE(ram.infinite);
        }
    }
}

TEST(Quaternion, HashimotoErrors) {
    EXPECT_THROW(hashimoto_search(1, 11, 1000), InvalidInput);
    EXPECT_THROW(hashimoto_search(30, 11, 1000), InvalidInput);
    EXPECT_THROW(hashimoto_search(12, 11, 1000), InvalidInput);
    EXPECT_THROW(hashimoto_search(6, 3, 1000), InvalidInput);
    EXPECT_THROW(hashimoto_search(6, 11, 4), SearchExhausted);
}

TEST(Quaternion, ConductorExamples) {
    EXPECT_EQ(embedding_conductor({Mat2{1, 2, -4, -1}, -7, 1}), 1);
    EXPECT_EQ(embedding_conductor({Mat2{0, 1, -4, 0}, -4, 1}), 2);
    EXPECT_EQ(embedding_conductor({Mat2{0, 1, -1, 0}, -1, 1}), 1);
    EXPECT_EQ(embedding_conductor({Mat2{0, 1, -3, 0}, -3, 1}), 2);
    EXPECT_EQ(fundamental_discriminant_of(-4), -4);
    EXPECT_EQ(fundamental_discriminant_of(-28), -7);
    EXPECT_EQ(fundamental_discriminant_of(-12), -3);
    EXPECT_THROW(embedding_conductor({Mat2{1, 2, -4, -1}, -6, 1}), InvalidInput);
}

TEST(Quaternion, ConductorInvariantsOnRandomEmbeddings) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        auto e = random_embedding(rng);
        const auto c = embedding_conductor(e);
        Mat2 g = random_unimodular(rng);
        MatrixEmbedding conj{g * e.m * g.inverse(), e.d, 1};
        EXPECT_EQ(embedding_conductor(conj), c) << e.m;
        for (std::int64_t level : {2, 3, 5}) {
            auto ce = embedding_conductor({e.m, e.d, level});
            EXPECT_GE(ce, c);
            EXPECT_EQ(ce % c, 0);
        }
    }
}

TEST(Quaternion, SkolemNoetherExample) {
    MatrixEmbedding e{Mat2{0, 1, -4, 0}, -4, 1};
    auto sn = skolem_noether_complement(e);
    EXPECT_EQ(sn.u, (Mat2{1, 0, 0, -1}));
    EXPECT_EQ(sn.u_square, 1);
    EXPECT_EQ(embedding_projection(e, Mat2::identity()), Mat2::identity());
    EXPECT_EQ(embedding_projection(e, sn.u), (Mat2{0, 0, 0, 0}));
}

TEST(Quaternion, SkolemNoetherRandom) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        auto e = random_embedding(rng);
        auto sn = skolem_noether_complement(e);
        const Mat2& u = sn.u;
        const Mat2& m = e.m;
        EXPECT_EQ(u * m, Rational(-1) * (m * u));
        EXPECT_TRUE((u * u).is_scalar());
        EXPECT_TRUE(u.is_integral());
        // Orthogonality under the trace form.
        for (const Mat2& lam : {Mat2::identity(), m})
            for (const Mat2& mu : {Mat2::identity(), m}) EXPECT_EQ(trace_form(lam, mu * u), 0);
        // P is idempotent and splits M_2(Q) into K-stable pieces.
        Mat2 x{trial, 3, -trial % 7, 2};
        Mat2 px = embedding_projection(e, x);
        EXPECT_EQ(embedding_projection(e, px), px);
        EXPECT_EQ(embedding_projection(e, m), m);
        EXPECT_EQ(embedding_projection(e, u), (Mat2{0, 0, 0, 0}));
        EXPECT_EQ(px * m, m * px);
        Mat2 rest = x - px;
        EXPECT_EQ(embedding_projection(e, m * rest), (Mat2{0, 0, 0, 0}));
    }
}
