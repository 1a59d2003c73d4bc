#pragma once

#include <cstdint>
#include <vector>

#include "amice/integer.hpp"

namespace amice {

// v_p(n!) by Legendre's digit-sum formula.
std::int64_t factorial_valuation(std::int64_t n, std::int64_t p);

// gamma_{n,i}: the coefficient of X^i in n! * C(X, n) = X(X-1)...(X-n+1).
Integer stirling_first_signed(int n, int i);

// S(r, n): t^r = sum_n S(r, n) * n! * C(t, n).
Integer stirling_second(int r, int n);

// Row-indexed tables [0..max][0..row].
using IntegerTable = std::vector<std::vector<Integer>>;
IntegerTable stirling_first_table(int max_n);
IntegerTable stirling_second_table(int max_r);
IntegerTable binomial_table(int max_n);

}  // namespace amice
