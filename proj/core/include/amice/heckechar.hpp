#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "amice/class_group.hpp"
#include "amice/cyclotomic.hpp"
#include "amice/measure.hpp"

namespace amice {

// Weight of lambda -> lambda^w1 * sigma(lambda)^w_sigma.
struct Weight {
    int w1 = 0;
    int w_sigma = 0;
    Weight operator+(const Weight& o) const { return {w1 + o.w1, w_sigma + o.w_sigma}; }
    Weight operator*(int k) const { return {w1 * k, w_sigma * k}; }
    bool operator==(const Weight&) const = default;
};

// A function on ideals of the order, recorded by its values on one chosen
// ideal per class. Representatives default to the reduced forms.
class WeightFunction {
public:
    WeightFunction(std::shared_ptr<const IdealClassGroup> group, Weight weight, std::vector<AlgebraicValue> values,
                   std::vector<Form> representatives = {});

    const IdealClassGroup& group() const { return *group_; }
    const std::shared_ptr<const IdealClassGroup>& group_ptr() const { return group_; }
    Weight weight() const { return weight_; }
    const std::vector<AlgebraicValue>& values() const { return values_; }
    const std::vector<Form>& representatives() const { return representatives_; }
    const AlgebraicValue& operator()(std::size_t cls) const { return values_.at(cls); }
    // Common cyclotomic order of the values.
    std::int64_t value_order() const;

    WeightFunction operator*(const WeightFunction& other) const;
    WeightFunction pow(unsigned e) const;

private:
    std::shared_ptr<const IdealClassGroup> group_;
    Weight weight_;
    std::vector<AlgebraicValue> values_;
    std::vector<Form> representatives_;
};

// All homomorphisms from the class group to mu_e (e the exponent), trivial
// character first. Values lie in Q(zeta_e) inside Q(sqrt(d_K))(zeta_e).
std::vector<WeightFunction> characters(std::shared_ptr<const IdealClassGroup> group);

bool same_group(const IdealClassGroup& a, const IdealClassGroup& b);

// (1/h) sum_s phi1(I_s) phi2(I_s) when the weights cancel, else 0.
AlgebraicValue pairing(const WeightFunction& phi1, const WeightFunction& phi2);
// <phi1, psi * phi2> for a finite-order psi.
AlgebraicValue twisted_pairing(const WeightFunction& phi1, const WeightFunction& phi2, const WeightFunction& psi);

// For a class-number-one order with units {1, -1}: the generator lambda of
// the ideal a Z + ((-b + sqrt(D))/2) Z attached to a primitive form (a, b, c),
// and lambda^w1 * conj(lambda)^w_sigma. Needs w1 + w_sigma even.
AlgebraicValue ideal_generator(const QuadOrder& order, const Form& ideal);
AlgebraicValue canonical_weight_value(const QuadOrder& order, Weight w, const Form& ideal);
WeightFunction canonical_weight_character(std::int64_t discriminant, Weight w,
                                          std::vector<Form> representatives = {});

// Choice of embedding into Z_p: the residue of sqrt(d_K) and the primitive
// root used to build zeta_m (least ones by default).
struct AvatarOptions {
    int precision = 20;
    std::optional<std::int64_t> sqrt_residue;
    std::optional<std::int64_t> generator;
};

struct PadicEmbedding {
    std::int64_t p;
    std::int64_t m;
    PadicScalar sqrt_d;
    PadicScalar zeta;
};

// Needs p split in K, p = 1 mod m and p not dividing m * c.
PadicEmbedding padic_embedding(const QuadOrder& order, std::int64_t m, std::int64_t p, const AvatarOptions& options);
std::vector<PadicScalar> padic_avatar(const WeightFunction& phi, std::int64_t p, const AvatarOptions& options = {});
std::vector<PadicScalar> padic_avatar(const WeightFunction& phi, const PadicEmbedding& embedding);

struct MeasureFamily {
    Weight weight0;  // of chi0
    Weight weight;   // of chi
    std::vector<Measure> measures;  // one per class
};

// At each class s: chi0^(p)(s) * dirac(chi^(p)(s)). Its r-th moment at s is
// the avatar of chi0 * chi^r.
MeasureFamily avatar_measure_family(const WeightFunction& chi0, const WeightFunction& chi,
                                    const PadicEmbedding& embedding, std::size_t order);

// (1/h) sum_s m_*(mu_s (x) mu'_s) for two families whose weights cancel.
Measure paired_measure(const MeasureFamily& a, const MeasureFamily& b, int r_max);

}  // namespace amice
