#include "amice_cli/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "amice/error.hpp"

namespace amice::json_io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing JSON field \"") + key + "\"");
    return j.at(key);
}

std::int64_t int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw InvalidInput(std::string("field \"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

Rational rational_of(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw InvalidInput("expected a decimal string or integer");
}

std::vector<Rational> rational_list(const json& v) {
    if (!v.is_array()) throw InvalidInput("expected an array");
    std::vector<Rational> out;
    for (const auto& x : v) out.push_back(rational_of(x));
    return out;
}

json rational_strings(const std::vector<Rational>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

}  // namespace

json encode(const PadicScalar& x) {
    json j;
    j["p"] = x.prime();
    if (x.is_zero()) {
        j["val"] = "inf";
        j["unit"] = "0";
    } else {
        j["val"] = x.valuation();
        j["unit"] = to_string(x.unit());
    }
    j["prec"] = x.precision();
    return j;
}

PadicScalar decode_scalar(const json& j) {
    const std::int64_t p = int_field(j, "p");
    const std::int64_t prec = int_field(j, "prec");
    if (prec < 1 || prec > PadicScalar::kExactPrecision) throw InvalidInput("prec out of range");
    const json& val = field(j, "val");
    if (val.is_string()) {
        if (val.get<std::string>() != "inf") throw InvalidInput("val must be an integer or \"inf\"");
        require_prime(p);
        return PadicScalar::zero(p, static_cast<int>(prec));
    }
    if (!val.is_number_integer()) throw InvalidInput("val must be an integer or \"inf\"");
    const json& unit = field(j, "unit");
    if (!unit.is_string()) throw InvalidInput("unit must be a decimal string");
    return PadicScalar(p, val.get<int>(), parse_integer(unit.get<std::string>()), static_cast<int>(prec));
}

json encode(const Measure& mu) {
    json j;
    j["p"] = mu.prime();
    j["order"] = mu.order();
    j["finite"] = mu.finite();
    json m = json::array();
    for (const auto& c : mu.mahler()) m.push_back(encode(c));
    j["mahler"] = std::move(m);
    return j;
}

Measure decode_measure(const json& j) {
    const std::int64_t p = int_field(j, "p");
    const std::int64_t order = int_field(j, "order");
    const json& finite = field(j, "finite");
    if (!finite.is_boolean()) throw InvalidInput("finite must be a boolean");
    const json& mahler = field(j, "mahler");
    if (!mahler.is_array() || static_cast<std::int64_t>(mahler.size()) != order) {
        throw InvalidInput("mahler must be an array of length order");
    }
    std::vector<PadicScalar> coeffs;
    for (const auto& c : mahler) {
        coeffs.push_back(decode_scalar(c));
        if (coeffs.back().prime() != p) throw InvalidInput("Mahler coefficient over a different prime");
    }
    return Measure(p, std::move(coeffs), finite.get<bool>());
}

json encode(const TruncatedSeries<PadicScalar>& s) {
    json j;
    j["domain"] = "padic";
    j["p"] = s[0].prime();
    j["order"] = s.order();
    json c = json::array();
    for (const auto& x : s.coeffs()) c.push_back(encode(x));
    j["coeffs"] = std::move(c);
    return j;
}

json encode(const TruncatedSeries<Rational>& s) {
    json j;
    j["domain"] = "rat";
    j["order"] = s.order();
    j["coeffs"] = rational_strings(s.coeffs());
    return j;
}

json encode(const QExpansion& f) {
    json j;
    j["k"] = f.weight();
    j["N"] = f.level();
    j["eps"] = rational_strings(f.nebentypus());
    j["coeffs"] = rational_strings(f.coeffs());
    return j;
}

QExpansion decode_qexpansion(const json& j) {
    const std::int64_t k = int_field(j, "k");
    const std::int64_t n = int_field(j, "N");
    auto coeffs = rational_list(field(j, "coeffs"));
    if (j.contains("eps")) return QExpansion(static_cast<int>(k), n, rational_list(j.at("eps")), std::move(coeffs));
    return QExpansion(static_cast<int>(k), n, std::move(coeffs));
}

json encode(const NearlyHolomorphic& f) {
    json j;
    j["k"] = f.weight();
    j["trunc"] = f.trunc();
    j["depth"] = f.depth();
    json rows = json::array();
    for (const auto& row : f.table()) rows.push_back(rational_strings(row));
    j["table"] = std::move(rows);
    return j;
}

json encode(const CyclotomicNumber& x) {
    json j;
    j["m"] = x.order();
    j["coeffs"] = rational_strings(x.coeffs());
    return j;
}

json encode(const AlgebraicValue& x) {
    json j;
    j["d"] = to_string(x.radicand());
    j["m"] = x.order();
    j["x"] = rational_strings(x.rational_part().coeffs());
    j["y"] = rational_strings(x.sqrt_part().coeffs());
    return j;
}

json encode(const Form& f) { return json::array({f.a, f.b, f.c}); }

json encode(const IdealClassGroup& g) {
    json j;
    j["disc"] = g.discriminant();
    j["fundamental"] = g.order().fundamental;
    j["conductor"] = g.order().conductor;
    j["h"] = g.size();
    json forms = json::array();
    for (const auto& f : g.forms()) forms.push_back(encode(f));
    j["forms"] = std::move(forms);
    json table = json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < g.size(); ++k) row.push_back(g.multiply(i, k));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    j["exponent"] = g.exponent();
    j["cyclic"] = g.is_cyclic();
    return j;
}

json encode(const PiPolynomial& x) {
    json terms = json::array();
    for (const auto& [e, c] : x.terms()) terms.push_back(json::array({e, to_string(c)}));
    return json{{"pi_terms", std::move(terms)}, {"text", x.to_string()}};
}

json encode(const Mat2& m) {
    return json::array({json::array({to_string(m.a), to_string(m.b)}), json::array({to_string(m.c), to_string(m.d)})});
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json encode(std::complex<double> z) { return json{{"re", format_double(z.real())}, {"im", format_double(z.imag())}}; }

json read_file(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot open " + path);
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace amice::json_io
