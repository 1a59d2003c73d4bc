#include "amice/heckechar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "amice/error.hpp"

namespace amice {

namespace {

AlgebraicValue zero_value(const IdealClassGroup& g) { return AlgebraicValue(g.order().fundamental, 1, 0); }

std::optional<std::int64_t> exact_sqrt(__int128 n) {
    if (n < 0) return std::nullopt;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<__int128>(r) * r > n) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
    if (static_cast<__int128>(r) * r != n) return std::nullopt;
    return r;
}

// Subgroup generated by gens, as a membership mask.
std::vector<bool> span(const IdealClassGroup& g, const std::vector<std::size_t>& gens) {
    std::vector<bool> in(g.size(), false);
    std::vector<std::size_t> queue{0};
    in[0] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (std::size_t s : gens) {
            std::size_t y = g.multiply(queue[i], s);
            if (!in[y]) {
                in[y] = true;
                queue.push_back(y);
            }
        }
    }
    return in;
}

}  // namespace

WeightFunction::WeightFunction(std::shared_ptr<const IdealClassGroup> group, Weight weight,
                               std::vector<AlgebraicValue> values, std::vector<Form> representatives)
    : group_(std::move(group)), weight_(weight), values_(std::move(values)),
      representatives_(std::move(representatives)) {
    if (!group_) throw InvalidInput("weight function without a class group");
    if (representatives_.empty()) representatives_ = group_->forms();
    if (values_.size() != group_->size() || representatives_.size() != group_->size()) {
        throw InvalidInput("weight function needs one value and one representative per class");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].radicand() != group_->order().fundamental) {
            throw InvalidInput("weight function value outside Q(sqrt(d_K))(zeta_m)");
        }
        if (group_->index_of(representatives_[i]) != i) throw InvalidInput("representative in the wrong class");
    }
}

std::int64_t WeightFunction::value_order() const {
    std::int64_t m = 1;
    for (const auto& v : values_) m = std::lcm(m, v.order());
    return m;
}

bool same_group(const IdealClassGroup& a, const IdealClassGroup& b) { return a.discriminant() == b.discriminant(); }

WeightFunction WeightFunction::operator*(const WeightFunction& other) const {
    if (!same_group(*group_, *other.group_)) throw InvalidInput("weight functions on different class groups");
    std::vector<Form> reps = representatives_;
    if (reps != other.representatives_) {
        // A weight-zero function is a class function, so it adapts to any representatives.
        if (other.weight_ == Weight{}) {
            reps = representatives_;
        } else if (weight_ == Weight{}) {
            reps = other.representatives_;
        } else {
            throw InvalidInput("weight functions recorded on different ideal representatives");
        }
    }
    std::vector<AlgebraicValue> values;
    values.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) values.push_back(values_[i] * other.values_[i]);
    return WeightFunction(group_, weight_ + other.weight_, std::move(values), std::move(reps));
}

WeightFunction WeightFunction::pow(unsigned e) const {
    std::vector<AlgebraicValue> values;
    values.reserve(values_.size());
    for (const auto& v : values_) values.push_back(v.pow(e));
    return WeightFunction(group_, weight_ * static_cast<int>(e), std::move(values), representatives_);
}

std::vector<WeightFunction> characters(std::shared_ptr<const IdealClassGroup> group) {
    const IdealClassGroup& g = *group;
    const std::size_t h = g.size();
    const auto e = static_cast<std::int64_t>(g.exponent());

    // Greedy generating set, largest orders first.
    std::vector<std::size_t> by_order(h);
    std::iota(by_order.begin(), by_order.end(), 0);
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](std::size_t x, std::size_t y) { return g.element_order(x) > g.element_order(y); });
    std::vector<std::size_t> gens;
    std::vector<bool> covered = span(g, gens);
    for (std::size_t x : by_order) {
        if (covered[x]) continue;
        gens.push_back(x);
        covered = span(g, gens);
    }

    // Every assignment gen -> zeta_e^k with k * ord(gen) = 0 mod e; keep the consistent ones.
    std::vector<std::vector<std::int64_t>> tables;
    std::vector<std::int64_t> choice(gens.size(), 0);
    while (true) {
        std::vector<std::int64_t> value(h, -1);
        value[0] = 0;
        std::vector<std::size_t> queue{0};
        bool ok = true;
        for (std::size_t i = 0; i < queue.size() && ok; ++i) {
            for (std::size_t j = 0; j < gens.size() && ok; ++j) {
                std::size_t y = g.multiply(queue[i], gens[j]);
                std::int64_t v = (value[queue[i]] + choice[j]) % e;
                if (value[y] < 0) {
                    value[y] = v;
                    queue.push_back(y);
                } else if (value[y] != v) {
                    ok = false;
                }
            }
        }
        if (ok) tables.push_back(value);
        std::size_t j = 0;
        for (; j < gens.size(); ++j) {
            const std::int64_t step = e / static_cast<std::int64_t>(g.element_order(gens[j]));
            choice[j] += step;
            if (choice[j] < e) break;
            choice[j] = 0;
        }
        if (j == gens.size()) break;
    }
    if (tables.size() != h) throw Error("character enumeration found " + std::to_string(tables.size()) +
                                        " characters for a group of order " + std::to_string(h));
    std::sort(tables.begin(), tables.end());

    std::vector<WeightFunction> out;
    out.reserve(h);
    const std::int64_t d_k = g.order().fundamental;
    for (const auto& t : tables) {
        std::vector<AlgebraicValue> values;
        values.reserve(h);
        for (std::int64_t k : t) values.push_back(AlgebraicValue::zeta_power(d_k, e, k));
        out.emplace_back(group, Weight{}, std::move(values));
    }
    return out;
}

AlgebraicValue pairing(const WeightFunction& phi1, const WeightFunction& phi2) {
    if (!same_group(phi1.group(), phi2.group())) throw InvalidInput("pairing of weight functions on different groups");
    if (!(phi1.weight() + phi2.weight() == Weight{})) return zero_value(phi1.group());
    if (phi1.representatives() != phi2.representatives() && !(phi1.weight() == Weight{})) {
        throw InvalidInput("pairing needs values on the same ideal representatives");
    }
    AlgebraicValue sum = zero_value(phi1.group());
    for (std::size_t s = 0; s < phi1.values().size(); ++s) sum = sum + phi1(s) * phi2(s);
    return sum * Rational(1, static_cast<long long>(phi1.values().size()));
}

AlgebraicValue twisted_pairing(const WeightFunction& phi1, const WeightFunction& phi2, const WeightFunction& psi) {
    if (!(psi.weight() == Weight{})) throw InvalidInput("twist must be a finite-order character");
    return pairing(phi1, psi * phi2);
}

AlgebraicValue ideal_generator(const QuadOrder& order, const Form& ideal) {
    const std::int64_t D = order.discriminant();
    if (ideal.discriminant() != D) throw InvalidInput("form of the wrong discriminant");
    if (D >= -4) throw InvalidInput("orders with units beyond {1, -1} are not supported");
    if (ideal.a <= 0) throw InvalidInput("form must be positive definite");
    // N(x a + y (-b + sqrt D)/2) = a (a x^2 - b x y + c y^2).
    const auto y_bound = static_cast<std::int64_t>(std::sqrt(4.0 * static_cast<double>(ideal.a) / static_cast<double>(-D))) + 1;
    for (std::int64_t step = 0; step <= 2 * y_bound; ++step) {
        const std::int64_t y = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
        const __int128 disc = static_cast<__int128>(D) * y * y + 4 * static_cast<__int128>(ideal.a);
        auto t = exact_sqrt(disc);
        if (!t) continue;
        for (std::int64_t sign : {1, -1}) {
            const __int128 num = static_cast<__int128>(ideal.b) * y + sign * static_cast<__int128>(*t);
            if (num % (2 * ideal.a) != 0) continue;
            const auto x = static_cast<std::int64_t>(num / (2 * ideal.a));
            Rational real = Rational(x) * ideal.a - Rational(y * ideal.b, 2);
            Rational imag(y * order.conductor, 2);
            return AlgebraicValue(order.fundamental, CyclotomicNumber(1, real), CyclotomicNumber(1, imag));
        }
    }
    throw InvalidInput("ideal is not principal");
}

AlgebraicValue canonical_weight_value(const QuadOrder& order, Weight w, const Form& ideal) {
    if ((w.w1 + w.w_sigma) % 2 != 0) throw InvalidInput("weight must have even total to be well defined on +-lambda");
    const AlgebraicValue lambda = ideal_generator(order, ideal);
    const AlgebraicValue bar = lambda.galois_sigma();
    // lambda^-1 = bar / N(lambda)
    auto power = [&](const AlgebraicValue& x, const AlgebraicValue& x_bar, int e) {
        if (e >= 0) return x.pow(static_cast<unsigned>(e));
        return x_bar.pow(static_cast<unsigned>(-e)) * Rational(1, ipow(Integer(ideal.a), static_cast<unsigned>(-e)));
    };
    return power(lambda, bar, w.w1) * power(bar, lambda, w.w_sigma);
}

WeightFunction canonical_weight_character(std::int64_t discriminant, Weight w, std::vector<Form> representatives) {
    auto group = class_group(discriminant);
    if (group->size() != 1) throw InvalidInput("canonical weight character needs class number one");
    if (representatives.empty()) representatives = group->forms();
    std::vector<AlgebraicValue> values;
    for (const auto& f : representatives) values.push_back(canonical_weight_value(group->order(), w, f));
    return WeightFunction(group, w, std::move(values), std::move(representatives));
}

PadicEmbedding padic_embedding(const QuadOrder& order, std::int64_t m, std::int64_t p, const AvatarOptions& options) {
    require_prime(p);
    if (kronecker(order.fundamental, p) != 1) {
        throw InvalidInput(std::to_string(p) + " is not split in Q(sqrt(" + std::to_string(order.fundamental) + "))");
    }
    if ((p - 1) % m != 0) throw InvalidInput("p must be 1 mod " + std::to_string(m));
    if ((m * order.conductor) % p == 0) throw InvalidInput("p divides m * c");
    return PadicEmbedding{p, m, hensel_sqrt(order.fundamental, p, options.precision, options.sqrt_residue),
                          root_of_unity(m, p, options.precision, options.generator)};
}

std::vector<PadicScalar> padic_avatar(const WeightFunction& phi, const PadicEmbedding& embedding) {
    std::vector<PadicScalar> out;
    out.reserve(phi.values().size());
    for (const auto& v : phi.values()) {
        if (embedding.m % v.order() != 0) throw InvalidInput("embedding does not contain the value field");
        out.push_back(v.promoted(embedding.m).to_padic(embedding.sqrt_d, embedding.zeta));
    }
    return out;
}

std::vector<PadicScalar> padic_avatar(const WeightFunction& phi, std::int64_t p, const AvatarOptions& options) {
    return padic_avatar(phi, padic_embedding(phi.group().order(), phi.value_order(), p, options));
}

MeasureFamily avatar_measure_family(const WeightFunction& chi0, const WeightFunction& chi,
                                    const PadicEmbedding& embedding, std::size_t order) {
    if (!same_group(chi0.group(), chi.group())) throw InvalidInput("characters on different class groups");
    auto scale = padic_avatar(chi0, embedding);
    auto point = padic_avatar(chi, embedding);
    MeasureFamily family{chi0.weight(), chi.weight(), {}};
    for (std::size_t s = 0; s < point.size(); ++s) {
        if (!point[s].is_unit()) throw InvalidInput("avatar value at class " + std::to_string(s) + " is not a p-adic unit");
        if (!scale[s].is_zero() && scale[s].valuation() < 0) {
            throw InvalidInput("avatar of chi0 at class " + std::to_string(s) + " is not integral");
        }
        family.measures.push_back(dirac(point[s], order).scaled(scale[s]));
    }
    return family;
}

Measure paired_measure(const MeasureFamily& a, const MeasureFamily& b, int r_max) {
    if (!(a.weight0 + b.weight0 == Weight{}) || !(a.weight + b.weight == Weight{})) {
        throw InvalidInput("paired families must have cancelling weights");
    }
    if (a.measures.size() != b.measures.size()) throw InvalidInput("families over different class groups");
    std::vector<std::pair<Measure, Measure>> pairs;
    pairs.reserve(a.measures.size());
    for (std::size_t s = 0; s < a.measures.size(); ++s) pairs.emplace_back(a.measures[s], b.measures[s]);
    return pairing_measure(pairs, r_max);
}

}  // namespace amice
