#include "amice_cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "amice/archimedean.hpp"
#include "amice/class_group.hpp"
#include "amice/error.hpp"
#include "amice/heckechar.hpp"
#include "amice/measure.hpp"
#include "amice/modform.hpp"
#include "amice/quaternion.hpp"
#include "amice/series.hpp"
#include "amice_cli/json_io.hpp"

namespace amice::cli {

using json_io::encode;
using json_io::json;

namespace {

std::int64_t positive_int(const json& j, const char* key) {
    if (!j[key].is_number_integer() || j[key].get<std::int64_t>() < 1) {
        throw InvalidInput(std::string("config field \"") + key + "\" must be a positive integer");
    }
    return j[key].get<std::int64_t>();
}

Mat2 parse_matrix(const std::string& text) {
    // "a,b;c,d"
    std::vector<Rational> entries;
    std::string cell;
    for (char ch : text + ";") {
        if (ch == ',' || ch == ';') {
            if (cell.empty()) throw InvalidInput("malformed matrix \"" + text + "\"");
            entries.push_back(parse_rational(cell));
            cell.clear();
        } else if (ch != ' ') {
            cell.push_back(ch);
        }
    }
    if (entries.size() != 4) throw InvalidInput("matrix needs four entries \"a,b;c,d\"");
    return {entries[0], entries[1], entries[2], entries[3]};
}

std::int64_t parse_place(const std::string& text) {
    if (text == "inf" || text == "infinity") return kInfinitePlace;
    Integer v = parse_integer(text);
    if (v < 2) throw InvalidInput("place must be a prime or \"inf\"");
    return to_int64(v);
}

json places_json(const RamifiedSet& r) {
    json places = json::array();
    for (auto p : r.primes) places.push_back(p);
    if (r.infinite) places.push_back("inf");
    return places;
}

const WeightFunction& pick(const std::vector<WeightFunction>& chars, std::size_t i) {
    if (i >= chars.size()) throw InvalidInput("character index out of range");
    return chars[i];
}

json character_json(std::size_t index, const WeightFunction& chi) {
    json values = json::array();
    for (const auto& v : chi.values()) values.push_back(encode(v));
    return json{{"index", index},
                {"order", chi.value_order()},
                {"weight", json::array({chi.weight().w1, chi.weight().w_sigma})},
                {"values", std::move(values)}};
}

std::vector<C2Point> sample_points(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.3, 0.9), angle(0.0, 2 * std::numbers::pi);
    std::vector<C2Point> pts;
    for (std::size_t i = 0; i < count; ++i) {
        pts.push_back({std::polar(radius(rng), angle(rng)), std::polar(radius(rng), angle(rng))});
    }
    return pts;
}

}  // namespace

Config load_config(const std::optional<std::string>& path) {
    Config cfg;
    if (const char* env = std::getenv("AMICE_PRECISION"); env && *env) {
        Integer v = parse_integer(env);
        if (v < 1 || v > PadicScalar::kMaxPrecision) throw InvalidInput("AMICE_PRECISION out of range");
        cfg.precision = static_cast<int>(to_int64(v));
    }
    if (!path) return cfg;
    json j = json_io::read_file(*path);
    if (!j.is_object()) throw InvalidInput("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "precision") {
            cfg.precision = static_cast<int>(positive_int(j, "precision"));
        } else if (key == "order") {
            cfg.order = static_cast<std::size_t>(positive_int(j, "order"));
        } else if (key == "nodes_a") {
            cfg.nodes_a = static_cast<std::size_t>(positive_int(j, "nodes_a"));
        } else if (key == "nodes_theta") {
            cfg.nodes_theta = static_cast<std::size_t>(positive_int(j, "nodes_theta"));
        } else if (key == "bound") {
            cfg.bound = positive_int(j, "bound");
        } else {
            throw InvalidInput("unknown config field \"" + key + "\"");
        }
    }
    return cfg;
}

namespace {

class Dispatcher {
public:
    explicit Dispatcher(std::ostream& out) : out_(out) {}

    int run(const std::vector<std::string>& args, std::ostream& err);

private:
    void emit(const json& j) { out_ << j.dump(2) << "\n"; }
    int precision() const { return prec_.value_or(cfg_.precision); }
    std::size_t order() const { return order_.value_or(cfg_.order); }

    void add_padic(CLI::App& app);
    void add_measure(CLI::App& app);
    void add_modform(CLI::App& app);
    void add_class_group(CLI::App& app);
    void add_hecke(CLI::App& app);
    void add_arch(CLI::App& app);
    void add_quat(CLI::App& app);

    CLI::App* leaf(CLI::App& parent, const std::string& name, const std::string& help,
                   std::function<void()> body) {
        CLI::App* sub = parent.add_subcommand(name, help);
        sub->callback([this, body = std::move(body)] { action_ = body; });
        return sub;
    }
    void add_precision(CLI::App* sub) { sub->add_option("--prec", prec_, "absolute p-adic precision"); }
    void add_order(CLI::App* sub) { sub->add_option("--order", order_, "series / measure order"); }

    std::ostream& out_;
    Config cfg_;
    std::optional<std::string> config_path_;
    std::function<void()> action_;

    // Shared option storage; only one leaf runs per invocation.
    std::optional<int> prec_;
    std::optional<std::size_t> order_;
    std::int64_t p_ = 0;
    std::string file_, file2_, value_;
    int r_ = 0;

    // measure
    bool all = false;
    int cell_level = 1;
    std::optional<int> target;
    // modform
    std::size_t trunc = 30;
    int k = 12;
    std::string op = "T", ap, eps = "1", chi_value = "1";
    int kappa = 1;
    // hecke
    std::size_t chi = 0, psi = 0;
    std::optional<std::size_t> twist, only;
    int w1 = 0, ws = 0;
    std::optional<std::int64_t> sqrt_residue, generator;
    // arch
    LocalFactorParams params;
    double zeta_angle = 0.0, tol = 1e-6, self_tol = 1e-9, h = 1e-3;
    std::optional<std::size_t> nodes_a, nodes_theta;
    int l = 0, m = 0, alpha = 0, beta = 0, steps = 1;
    std::size_t points = 10;
    std::uint64_t seed = 1;
    // quat and class groups
    std::string a, b, place, matrix;
    std::int64_t disc = 0, level = 1, delta = 0;
    std::optional<std::int64_t> bound;
};

void Dispatcher::add_padic(CLI::App& app) {
    CLI::App& g = *app.add_subcommand("padic", "p-adic scalars");
    g.require_subcommand(1);

    auto* enc = leaf(g, "encode", "rational -> p-adic scalar JSON", [this] {
        emit(encode(PadicScalar::from_rational(p_, parse_rational(value_), precision())));
    });
    enc->add_option("--p", p_)->required();
    enc->add_option("--value", value_, "integer or a/b")->required();
    add_precision(enc);

    auto* dec = leaf(g, "decode", "p-adic scalar JSON -> rational representative", [this] {
        PadicScalar x = json_io::decode_scalar(json_io::read_file(file_));
        emit(json{{"value", to_string(x.value())}, {"scalar", encode(x)}});
    });
    dec->add_option("--file", file_)->required();

    auto* sq = leaf(g, "sqrt", "Hensel square root", [this] {
        emit(encode(hensel_sqrt(parse_integer(file2_), p_, precision(), sqrt_residue)));
    });
    sq->add_option("--d", file2_)->required();
    sq->add_option("--p", p_)->required();
    sq->add_option("--residue", sqrt_residue, "square root of d mod p to lift");
    add_precision(sq);

    auto* te = leaf(g, "teichmuller", "Teichmuller lift of a residue", [this] {
        emit(encode(teichmuller(to_int64(parse_integer(value_)), p_, precision())));
    });
    te->add_option("--residue", value_)->required();
    te->add_option("--p", p_)->required();
    add_precision(te);

    auto* bs = leaf(g, "binomial", "Mahler series sum_n C(z,n) T^n", [this] {
        emit(encode(binomial_series(PadicScalar::from_rational(p_, parse_rational(value_), precision()), order())));
    });
    bs->add_option("--p", p_)->required();
    bs->add_option("--z", value_)->required();
    add_precision(bs);
    add_order(bs);
}

void Dispatcher::add_measure(CLI::App& app) {
    CLI::App& g = *app.add_subcommand("measure", "measures on Z_p");
    g.require_subcommand(1);

    auto* di = leaf(g, "dirac", "Dirac measure at z", [this] {
        emit(encode(dirac(PadicScalar::from_rational(p_, parse_rational(value_), precision()), order())));
    });
    di->add_option("--p", p_)->required();
    di->add_option("--z", value_)->required();
    add_precision(di);
    add_order(di);

    auto* mo = leaf(g, "moments", "r-th moment (or moments 0..r with --all)", [this] {
        Measure mu = json_io::decode_measure(json_io::read_file(file_));
        if (!all) return emit(encode(moments(mu, r_)));
        json arr = json::array();
        for (const auto& m : moment_sequence(mu, r_)) arr.push_back(encode(m));
        emit(arr);
    });
    mo->add_option("--file", file_)->required();
    mo->add_option("--r", r_)->required()->check(CLI::NonNegativeNumber);
    mo->add_flag("--all", all);

    auto* fm = leaf(g, "from-moments", "Mahler coefficients from a JSON array of moments", [this] {
        json j = json_io::read_file(file_);
        if (j.is_object() && j.contains("moments")) j = j.at("moments");
        if (!j.is_array() || j.empty()) throw InvalidInput("expected a nonempty array of scalars");
        std::vector<PadicScalar> ms;
        for (const auto& x : j) ms.push_back(json_io::decode_scalar(x));
        emit(encode(mahler_from_moments(ms)));
    });
    fm->add_option("--file", file_)->required();

    auto* re = leaf(g, "restrict", "restriction to Z_p^x", [this] {
        Measure mu = json_io::decode_measure(json_io::read_file(file_));
        TruncationPolicy policy;
        policy.output_order = order_;
        policy.target_precision = target.value_or(1);
        emit(encode(restrict_to_units(mu, policy)));
    });
    re->add_option("--file", file_)->required();
    re->add_option("--target", target, "minimum precision every output coefficient must keep");
    add_order(re);

    auto* cm = leaf(g, "cell-mass", "mass of residue + p^level Z_p (or all cells with --all)", [this] {
        Measure mu = json_io::decode_measure(json_io::read_file(file_));
        if (!all) return emit(encode(cell_mass(mu, parse_integer(value_), cell_level, target.value_or(1))));
        json arr = json::array();
        for (const auto& m : cell_masses(mu, cell_level, target.value_or(1))) arr.push_back(encode(m));
        emit(arr);
    });
    cm->add_option("--file", file_)->required();
    cm->add_option("--residue", value_, "cell residue")->default_val("0");
    cm->add_option("--level", cell_level)->default_val(1);
    cm->add_option("--target", target);
    cm->add_flag("--all", all);

    auto* pu = leaf(g, "push", "multiplicative pushforward of mu1 x mu2", [this] {
        Measure a = json_io::decode_measure(json_io::read_file(file_));
        Measure b = json_io::decode_measure(json_io::read_file(file2_));
        emit(encode(mult_pushforward(a, b, r_)));
    });
    pu->add_option("--file", file_)->required();
    pu->add_option("--file2", file2_)->required();
    pu->add_option("--r", r_, "highest moment")->required()->check(CLI::NonNegativeNumber);

    auto* pa = leaf(g, "pair", "sum of pushforwards over a JSON array of [mu1, mu2] pairs", [this] {
        json j = json_io::read_file(file_);
        if (!j.is_array()) throw InvalidInput("expected an array of [measure, measure] pairs");
        std::vector<std::pair<Measure, Measure>> pairs;
        for (const auto& pr : j) {
            if (!pr.is_array() || pr.size() != 2) throw InvalidInput("each pair must hold two measures");
            pairs.emplace_back(json_io::decode_measure(pr[0]), json_io::decode_measure(pr[1]));
        }
        emit(encode(pairing_measure(pairs, r_)));
    });
    pa->add_option("--file", file_)->required();
    pa->add_option("--r", r_)->required()->check(CLI::NonNegativeNumber);
}

void Dispatcher::add_modform(CLI::App& app) {
    CLI::App& g = *app.add_subcommand("modform", "q-expansions and Hecke operators");
    g.require_subcommand(1);

    auto* de = leaf(g, "delta", "the discriminant form from its product expansion", [this] { emit(encode(delta_form(trunc))); });
    de->add_option("--trunc", trunc)->check(CLI::PositiveNumber);

    auto* ei = leaf(g, "eisenstein", "normalised Eisenstein series E_k", [this] { emit(encode(eisenstein(k, trunc))); });
    ei->add_option("--k", k)->required();
    ei->add_option("--trunc", trunc)->check(CLI::PositiveNumber);

    auto* dp = leaf(g, "deplete", "p-depletion (1 - VU) f", [this] {
        emit(encode(p_deplete(json_io::decode_qexpansion(json_io::read_file(file_)), p_)));
    });
    dp->add_option("--file", file_)->required();
    dp->add_option("--p", p_)->required();

    auto* he = leaf(g, "hecke", "T_p, U_p or V_p", [this] {
        QExpansion f = json_io::decode_qexpansion(json_io::read_file(file_));
        if (op == "T") return emit(encode(t_op(f, p_)));
        if (op == "U") return emit(encode(u_op(f, p_)));
        emit(encode(v_op(f, p_)));
    });
    he->add_option("--file", file_)->required();
    he->add_option("--p", p_)->required();
    he->add_option("--op", op)->check(CLI::IsMember({"T", "U", "V"}));

    auto* ef = leaf(g, "euler-factor", "1 - a_p chi p^(-2 kappa) + eps(p) chi^2 p^(-2 kappa - 1)", [this] {
        EulerFactorInput in{parse_rational(ap), parse_rational(eps), parse_rational(chi_value), kappa};
        emit(json{{"value", to_string(euler_factor(in, p_))}});
    });
    ef->add_option("--ap", ap)->required();
    ef->add_option("--eps", eps);
    ef->add_option("--chi", chi_value, "value of the character at the uniformiser (opaque input)");
    ef->add_option("--kappa", kappa)->required();
    ef->add_option("--p", p_)->required();

    auto* th = leaf(g, "theta", "theta^r = (q d/dq)^r", [this] {
        emit(encode(theta_op(json_io::decode_qexpansion(json_io::read_file(file_)), static_cast<unsigned>(r_))));
    });
    th->add_option("--file", file_)->required();
    th->add_option("--r", r_)->required()->check(CLI::NonNegativeNumber);

    auto* ma = leaf(g, "maass", "r-fold Maass raising as a polynomial in X = 1/(4 pi y)", [this] {
        NearlyHolomorphic f(json_io::decode_qexpansion(json_io::read_file(file_)));
        emit(encode(maass_raise(f, static_cast<unsigned>(r_))));
    });
    ma->add_option("--file", file_)->required();
    ma->add_option("--r", r_)->required()->check(CLI::NonNegativeNumber);

    auto* me = leaf(g, "measure", "coefficient measure sum_n a_n delta_n", [this] {
        emit(encode(coefficient_measure(json_io::decode_qexpansion(json_io::read_file(file_)), p_, precision())));
    });
    me->add_option("--file", file_)->required();
    me->add_option("--p", p_)->required();
    add_precision(me);
}

void Dispatcher::add_class_group(CLI::App& app) {
    auto* cg = leaf(app, "class-group", "form class group of discriminant D < 0", [this] {
        emit(encode(*class_group(disc)));
    });
    cg->add_option("--disc", disc)->required();
}

void Dispatcher::add_hecke(CLI::App& app) {
    CLI::App& g = *app.add_subcommand("hecke", "class-group characters, pairings and avatars");
    g.require_subcommand(1);

    auto* ch = leaf(g, "characters", "character table, trivial character first", [this] {
        auto chars = characters(class_group(disc));
        json arr = json::array();
        for (std::size_t i = 0; i < chars.size(); ++i) arr.push_back(character_json(i, chars[i]));
        emit(arr);
    });
    ch->add_option("--disc", disc)->required();

    auto* pa = leaf(g, "pair", "<chi, psi>, or the twisted pairing with --twist", [this] {
        auto chars = characters(class_group(disc));
        AlgebraicValue v = twist ? twisted_pairing(pick(chars, chi), pick(chars, psi), pick(chars, *twist))
                                 : pairing(pick(chars, chi), pick(chars, psi));
        emit(json{{"value", encode(v)}, {"complex", encode(v.to_complex())}});
    });
    pa->add_option("--disc", disc)->required();
    pa->add_option("--chi", chi, "index into the character table")->required();
    pa->add_option("--psi", psi, "index into the character table")->required();
    pa->add_option("--twist", twist, "weight-zero twisting character index");

    auto* av = leaf(g, "avatar", "p-adic avatars of the characters", [this] {
        auto chars = characters(class_group(disc));
        AvatarOptions opt{precision(), sqrt_residue, generator};
        json arr = json::array();
        for (std::size_t i = 0; i < chars.size(); ++i) {
            if (only && *only != i) continue;
            json vals = json::array();
            for (const auto& x : padic_avatar(chars[i], p_, opt)) vals.push_back(encode(x));
            arr.push_back(json{{"index", i}, {"avatar", std::move(vals)}});
        }
        if (only && arr.empty()) throw InvalidInput("character index out of range");
        emit(arr);
    });
    av->add_option("--disc", disc)->required();
    av->add_option("--p", p_)->required();
    av->add_option("--chi", only, "restrict to one character index");
    av->add_option("--sqrt-residue", sqrt_residue, "square root of d_K mod p fixing the embedding");
    av->add_option("--generator", generator, "primitive root mod p fixing the root of unity");
    add_precision(av);

    auto* ca = leaf(g, "canonical", "canonical weight-(w1, wsigma) character (class number one)", [this] {
        emit(character_json(0, canonical_weight_character(disc, Weight{w1, ws})));
    });
    ca->add_option("--disc", disc)->required();
    ca->add_option("--w1", w1)->required();
    ca->add_option("--wsigma", ws)->required();
}

void Dispatcher::add_arch(CLI::App& app) {
    CLI::App& g = *app.add_subcommand("arch", "archimedean local factor");
    g.require_subcommand(1);

    auto* lf = leaf(g, "local-factor", "quadrature against the Gamma closed form", [this] {
        params.zeta_u = std::polar(1.0, zeta_angle);
        QuadratureNodes nodes{nodes_a.value_or(cfg_.nodes_a), nodes_theta.value_or(cfg_.nodes_theta)};
        auto rep = local_factor_report(params, nodes);
        const bool vanishing = params.l < params.r;
        const double err = vanishing ? std::abs(rep.quadrature) / rep.scale : rep.relative_error;
        const bool ok = err < (vanishing ? 1e-8 : tol) && rep.self_consistency < self_tol;
        emit(json{{"kappa", params.kappa},
                  {"r", params.r},
                  {"l", params.l},
                  {"s", json_io::format_double(params.s)},
                  {"quadrature", encode(rep.quadrature)},
                  {"refined", encode(rep.refined)},
                  {"closed_form", encode(rep.closed_form)},
                  {"scale", json_io::format_double(rep.scale)},
                  {"relative_error", json_io::format_double(err)},
                  {"self_consistency", json_io::format_double(rep.self_consistency)},
                  {"within_tolerance", ok}});
        if (!ok) throw ToleranceNotMet("quadrature disagrees with the closed form or with its refinement");
    });
    lf->add_option("--kappa", params.kappa)->required();
    lf->add_option("--r", params.r)->required();
    lf->add_option("--l", params.l)->required();
    lf->add_option("--s", params.s)->default_val(0.5);
    lf->add_option("--nu", params.nu_u_abs, "|nu(u)|")->default_val(1.0);
    lf->add_option("--zeta-angle", zeta_angle, "zeta_u = exp(i * angle)");
    lf->add_option("--nodes-a", nodes_a);
    lf->add_option("--nodes-theta", nodes_theta);
    lf->add_option("--tol", tol, "relative tolerance for l = r");
    lf->add_option("--self-tol", self_tol, "tolerance between node counts N and 2N");

    auto* id = leaf(g, "identity", "sum_alpha delta^r_{alpha, r-alpha} = (4 pi)^-r 2^r r!", [this] {
        PiPolynomial lhs = delta_diagonal_sum(r_);
        PiPolynomial rhs = PiPolynomial::scaled_pi_power(Rational(4), -r_) *
                           Rational(ipow(Integer(2), static_cast<unsigned>(r_)) * factorial(static_cast<unsigned>(r_)));
        emit(json{{"r", r_}, {"sum", encode(lhs)}, {"expected", encode(rhs)}, {"holds", lhs == rhs}});
        if (!(lhs == rhs)) throw ToleranceNotMet("delta identity fails");
    });
    id->add_option("--r", r_)->required()->check(CLI::NonNegativeNumber);

    auto* ga = leaf(g, "gamma", "gamma^l_{alpha,beta} and delta^l_{alpha,beta}", [this] {
        emit(json{{"gamma", encode(gamma_coeff(l, alpha, beta))}, {"delta", encode(delta_coeff(l, alpha, beta))}});
    });
    ga->add_option("--l", l)->required();
    ga->add_option("--alpha", alpha)->required();
    ga->add_option("--beta", beta)->required();

    auto* xp = leaf(g, "xplus", "iterate the (X+)' recurrence from phi^{(l,m)}", [this] {
        XplusState st = xplus_iterate({{{l, m}, PiPolynomial(1)}}, steps);
        json arr = json::array();
        for (const auto& [key, c] : st) arr.push_back(json{{"l", key.first}, {"m", key.second}, {"coeff", encode(c)}});
        emit(arr);
    });
    xp->add_option("--l", l)->required();
    xp->add_option("--m", m)->required();
    xp->add_option("--steps", steps)->check(CLI::NonNegativeNumber);

    auto* xc = leaf(g, "xplus-check", "finite differences against the recurrence", [this] {
        auto pts = sample_points(points, seed);
        const double dev = xplus_numeric_check(l, m, pts, h);
        const double order = xplus_richardson_order(l, m, pts, 0.1);
        const bool ok = dev < tol;
        emit(json{{"l", l},
                  {"m", m},
                  {"h", json_io::format_double(h)},
                  {"max_relative_deviation", json_io::format_double(dev)},
                  {"richardson_order", json_io::format_double(order)},
                  {"within_tolerance", ok}});
        if (!ok) throw ToleranceNotMet("finite-difference deviation above tolerance");
    });
    xc->add_option("--l", l)->required();
    xc->add_option("--m", m)->required();
    xc->add_option("--points", points)->check(CLI::PositiveNumber);
    xc->add_option("--seed", seed);
    xc->add_option("--step", h, "finite-difference step");
    xc->add_option("--tol", tol);

    auto* la = leaf(g, "lambda", "1/2 r! (2 kappa + r)^2 pi^(2 kappa + r - 1)", [this] {
        emit(json{{"value", encode(lambda_infinity(params.kappa, params.r))}});
    });
    la->add_option("--kappa", params.kappa)->required();
    la->add_option("--r", params.r)->required();
}

void Dispatcher::add_quat(CLI::App& app) {
    CLI::App& g = *app.add_subcommand("quat", "quaternion algebras over Q");
    g.require_subcommand(1);

    auto* hi = leaf(g, "hilbert", "local Hilbert symbol (a, b)_v", [this] {
        emit(json{{"a", a}, {"b", b}, {"place", place}, {"symbol", hilbert_symbol(parse_rational(a), parse_rational(b), parse_place(place))}});
    });
    hi->add_option("--a", a)->required();
    hi->add_option("--b", b)->required();
    hi->add_option("--place", place, "prime or inf")->required();

    auto* ra = leaf(g, "ramified", "ramified places of (a, b)_Q", [this] {
        RamifiedSet r = ramified_set({parse_rational(a), parse_rational(b)});
        emit(json{{"places", places_json(r)}, {"discriminant", to_string(r.discriminant())}, {"definite", r.infinite}});
    });
    ra->add_option("--a", a)->required();
    ra->add_option("--b", b)->required();

    auto* ha = leaf(g, "hashimoto", "least admissible q for the Hashimoto model", [this] {
        HashimotoData d = hashimoto_search(delta, p_, bound.value_or(cfg_.bound));
        emit(json{{"delta", d.delta}, {"p", p_}, {"q", d.q}, {"b", d.b_param}});
    });
    ha->add_option("--delta", delta)->required();
    ha->add_option("--p", p_)->required();
    ha->add_option("--bound", bound);

    auto* co = leaf(g, "conductor", "conductor of an embedding in the level-N Eichler order", [this] {
        MatrixEmbedding e{parse_matrix(matrix), disc, level};
        emit(json{{"matrix", encode(e.m)}, {"disc", disc}, {"level", level}, {"conductor", embedding_conductor(e)}});
    });
    co->add_option("--matrix", matrix, "\"a,b;c,d\" with M^2 = disc")->required();
    co->add_option("--disc", disc)->required();
    co->add_option("--level", level)->check(CLI::PositiveNumber);

    auto* cp = leaf(g, "complement", "anticommuting u with u^2 scalar", [this] {
        MatrixEmbedding e{parse_matrix(matrix), disc, level};
        SkolemNoether sn = skolem_noether_complement(e);
        emit(json{{"u", encode(sn.u)}, {"u_square", to_string(sn.u_square)}});
    });
    cp->add_option("--matrix", matrix)->required();
    cp->add_option("--disc", disc)->required();
}

int Dispatcher::run(const std::vector<std::string>& args, std::ostream& err) {
    CLI::App app{"Exact and numerical tools for p-adic measures, Hecke characters and quaternion algebras", "amice"};
    app.require_subcommand(1);
    app.add_option("--config", config_path_, "JSON file overriding precision, order, nodes_a, nodes_theta, bound");
    add_padic(app);
    add_measure(app);
    add_modform(app);
    add_class_group(app);
    add_hecke(app);
    add_arch(app);
    add_quat(app);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out_ << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out_ << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out_ << e.what() << "\n";
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    try {
        cfg_ = load_config(config_path_);
        if (!action_) throw InvalidInput("no command given");
        action_();
        return kOk;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const PrecisionExhausted& e) {
        err << "precision exhausted: " << e.what() << "\n";
        return kPrecisionExhausted;
    } catch (const SearchExhausted& e) {
        err << "search exhausted: " << e.what() << "\n";
        return kSearchExhausted;
    } catch (const ToleranceNotMet& e) {
        err << "tolerance not met: " << e.what() << "\n";
        return kToleranceNotMet;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Dispatcher d(out);
    return d.run(args, err);
}

}  // namespace amice::cli
