#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

namespace amice {

// Z + c O_K inside the imaginary quadratic field of discriminant d_K.
struct QuadOrder {
    std::int64_t fundamental;  // d_K
    std::int64_t conductor;    // c
    std::int64_t discriminant() const { return conductor * conductor * fundamental; }
};

bool is_fundamental_discriminant(std::int64_t d);
// Splits D < 0, D = 0, 1 mod 4, as c^2 d_K.
QuadOrder quad_order(std::int64_t discriminant);

// Positive-definite binary quadratic form a x^2 + b x y + c y^2.
struct Form {
    std::int64_t a, b, c;
    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const Form&) const = default;
};

Form reduce(Form f);
bool is_reduced(const Form& f);
// Dirichlet composition, reduced.
Form compose(const Form& f, const Form& g);
Form inverse(const Form& f);
Form principal_form(std::int64_t discriminant);

class IdealClassGroup {
public:
    explicit IdealClassGroup(std::int64_t discriminant);

    const QuadOrder& order() const { return order_; }
    std::int64_t discriminant() const { return order_.discriminant(); }
    std::size_t size() const { return forms_.size(); }
    // Reduced forms; index 0 is the principal form.
    const std::vector<Form>& forms() const { return forms_; }
    std::size_t index_of(const Form& f) const;  // any primitive form of this discriminant
    std::size_t multiply(std::size_t i, std::size_t j) const { return table_[i][j]; }
    std::size_t inverse_of(std::size_t i) const { return inverses_[i]; }
    std::size_t element_order(std::size_t i) const;
    std::size_t exponent() const;
    bool is_cyclic() const;

private:
    QuadOrder order_;
    std::vector<Form> forms_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverses_;
};

std::shared_ptr<const IdealClassGroup> class_group(std::int64_t discriminant);

std::ostream& operator<<(std::ostream& os, const Form& f);

}  // namespace amice
