#include "amice/class_group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "amice/error.hpp"
#include "amice/integer.hpp"

namespace amice {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool squarefree(std::int64_t n) {
    for (auto [q, e] : factor(n))
        if (e > 1) return false;
    return true;
}

// Extended gcd: returns g >= 0 with u a + v b = g.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
    std::int64_t u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        std::int64_t q = floor_div(a, b);
        std::int64_t r = a - q * b;
        a = b;
        b = r;
        std::int64_t t = u0 - q * u1;
        u0 = u1;
        u1 = t;
        t = v0 - q * v1;
        v0 = v1;
        v1 = t;
    }
    if (a < 0) {
        a = -a;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    return a;
}

// b into (-a, a] by x -> x + r y.
Form normalize(Form f) {
    std::int64_t r = floor_div(f.a - f.b, 2 * f.a);
    std::int64_t b = f.b + 2 * r * f.a;
    std::int64_t c = f.a * r * r + f.b * r + f.c;
    return {f.a, b, c};
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    std::int64_t m4 = mod_floor(d, 4);
    if (m4 == 1) return squarefree(d);
    if (m4 != 0) return false;
    std::int64_t m = d / 4;
    std::int64_t r = mod_floor(m, 4);
    return (r == 2 || r == 3) && squarefree(m);
}

QuadOrder quad_order(std::int64_t discriminant) {
    if (discriminant >= 0) throw InvalidInput("discriminant must be negative");
    if (mod_floor(discriminant, 4) > 1) throw InvalidInput("discriminant must be 0 or 1 mod 4");
    // Largest c with D / c^2 a discriminant; that quotient is then fundamental.
    std::int64_t best = 1;
    for (std::int64_t c = 1; c * c <= -discriminant; ++c) {
        if (discriminant % (c * c) != 0) continue;
        std::int64_t d = discriminant / (c * c);
        if (is_fundamental_discriminant(d)) best = c;
    }
    std::int64_t d_k = discriminant / (best * best);
    if (!is_fundamental_discriminant(d_k)) throw InvalidInput("no fundamental discriminant divides D");
    return {d_k, best};
}

bool is_reduced(const Form& f) {
    if (!(std::abs(f.b) <= f.a && f.a <= f.c)) return false;
    if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

Form reduce(Form f) {
    if (f.a <= 0 || f.discriminant() >= 0) throw InvalidInput("reduction needs a positive-definite form");
    f = normalize(f);
    while (f.a > f.c) {
        f = normalize(Form{f.c, -f.b, f.a});
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

Form principal_form(std::int64_t discriminant) {
    std::int64_t b = mod_floor(discriminant, 2);
    return Form{1, b, (b * b - discriminant) / 4};
}

Form inverse(const Form& f) { return reduce(Form{f.a, -f.b, f.c}); }

Form compose(const Form& f, const Form& g) {
    const std::int64_t D = f.discriminant();
    if (g.discriminant() != D) throw InvalidInput("composition of forms of different discriminant");
    Form f1 = f, f2 = g;
    if (f1.a > f2.a) std::swap(f1, f2);
    const std::int64_t s = (f1.b + f2.b) / 2;
    const std::int64_t n = f2.b - s;
    std::int64_t y1 = 0, d = f1.a;
    if (f2.a % f1.a != 0) {
        std::int64_t u, v;
        d = xgcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    std::int64_t x2 = 0, y2 = -1, d1 = d;
    if (s % d != 0) {
        std::int64_t u, v;
        d1 = xgcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    const std::int64_t v1 = f1.a / d1;
    const std::int64_t v2 = f2.a / d1;
    const __int128 r128 = (static_cast<__int128>(y1) * y2 * n - static_cast<__int128>(x2) * f2.c) % v1;
    std::int64_t r = static_cast<std::int64_t>(r128);
    if (r < 0) r += v1;
    const std::int64_t b3 = f2.b + 2 * v2 * r;
    const std::int64_t a3 = v1 * v2;
    const __int128 num = static_cast<__int128>(b3) * b3 - D;
    if (num % (4 * static_cast<__int128>(a3)) != 0) throw Error("composition produced a non-integral form");
    const auto c3 = static_cast<std::int64_t>(num / (4 * static_cast<__int128>(a3)));
    return reduce(Form{a3, b3, c3});
}

IdealClassGroup::IdealClassGroup(std::int64_t discriminant) : order_(quad_order(discriminant)) {
    const std::int64_t D = discriminant;
    const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (std::int64_t a = 1; a <= bound; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (mod_floor(b - D, 2) != 0) continue;
            std::int64_t num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Form f{a, b, num / (4 * a)};
            if (f.c < a) continue;
            if (!is_reduced(f)) continue;
            if (std::gcd(std::gcd(f.a, std::abs(f.b)), f.c) != 1) continue;
            forms_.push_back(f);
        }
    }
    std::sort(forms_.begin(), forms_.end(), [](const Form& x, const Form& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    if (forms_.empty() || !(forms_.front() == principal_form(D))) throw Error("principal form missing");
    const std::size_t h = forms_.size();
    table_.assign(h, std::vector<std::size_t>(h, 0));
    inverses_.assign(h, 0);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = i; j < h; ++j) {
            table_[i][j] = table_[j][i] = index_of(compose(forms_[i], forms_[j]));
        }
        inverses_[i] = index_of(inverse(forms_[i]));
    }
}

std::size_t IdealClassGroup::index_of(const Form& f) const {
    if (f.discriminant() != discriminant()) throw InvalidInput("form of the wrong discriminant");
    Form r = reduce(f);
    auto it = std::find(forms_.begin(), forms_.end(), r);
    if (it == forms_.end()) throw InvalidInput("form is not primitive");
    return static_cast<std::size_t>(it - forms_.begin());
}

std::size_t IdealClassGroup::element_order(std::size_t i) const {
    std::size_t x = i, n = 1;
    while (x != 0) {
        x = table_[x][i];
        ++n;
    }
    return n;
}

std::size_t IdealClassGroup::exponent() const {
    std::size_t e = 1;
    for (std::size_t i = 0; i < size(); ++i) e = std::lcm(e, element_order(i));
    return e;
}

bool IdealClassGroup::is_cyclic() const { return exponent() == size(); }

std::shared_ptr<const IdealClassGroup> class_group(std::int64_t discriminant) {
    return std::make_shared<const IdealClassGroup>(discriminant);
}

std::ostream& operator<<(std::ostream& os, const Form& f) {
    return os << "(" << f.a << ", " << f.b << ", " << f.c << ")";
}

}  // namespace amice
