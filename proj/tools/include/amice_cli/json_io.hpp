#pragma once

#include <complex>
#include <string>

#include <nlohmann/json.hpp>

#include "amice/archimedean.hpp"
#include "amice/class_group.hpp"
#include "amice/cyclotomic.hpp"
#include "amice/measure.hpp"
#include "amice/modform.hpp"
#include "amice/padic.hpp"
#include "amice/quaternion.hpp"
#include "amice/series.hpp"

namespace amice::json_io {

using nlohmann::json;

// Parsing failures raise InvalidInput.
json encode(const PadicScalar& x);
PadicScalar decode_scalar(const json& j);

json encode(const Measure& mu);
Measure decode_measure(const json& j);

json encode(const TruncatedSeries<PadicScalar>& s);
json encode(const TruncatedSeries<Rational>& s);

json encode(const QExpansion& f);
QExpansion decode_qexpansion(const json& j);

json encode(const NearlyHolomorphic& f);

json encode(const CyclotomicNumber& x);
json encode(const AlgebraicValue& x);

json encode(const IdealClassGroup& g);
json encode(const Form& f);

json encode(const PiPolynomial& x);
json encode(const Mat2& m);

// 17 significant digits.
std::string format_double(double x);
json encode(std::complex<double> z);

json read_file(const std::string& path);  // "-" reads stdin

}  // namespace amice::json_io
