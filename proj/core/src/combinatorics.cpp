#include "amice/combinatorics.hpp"

#include <string>

#include "amice/error.hpp"
#include "amice/padic.hpp"

namespace amice {

std::int64_t factorial_valuation(std::int64_t n, std::int64_t p) {
    if (n < 0) throw InvalidInput("factorial_valuation needs n >= 0");
    require_prime(p);
    std::int64_t digit_sum = 0;
    for (std::int64_t m = n; m > 0; m /= p) digit_sum += m % p;
    return (n - digit_sum) / (p - 1);
}

IntegerTable stirling_first_table(int max_n) {
    if (max_n < 0) throw InvalidInput("table size must be nonnegative");
    // Row n holds the coefficients of X(X-1)...(X-n+1), lowest degree first.
    IntegerTable rows(static_cast<std::size_t>(max_n) + 1);
    rows[0] = {Integer(1)};
    for (int n = 1; n <= max_n; ++n) {
        const auto& prev = rows[n - 1];
        std::vector<Integer> row(static_cast<std::size_t>(n) + 1, Integer(0));
        for (int i = 0; i < n; ++i) {
            row[i + 1] += prev[i];
            row[i] -= prev[i] * (n - 1);
        }
        rows[n] = std::move(row);
    }
    return rows;
}

IntegerTable stirling_second_table(int max_r) {
    if (max_r < 0) throw InvalidInput("table size must be nonnegative");
    IntegerTable rows(static_cast<std::size_t>(max_r) + 1);
    rows[0] = {Integer(1)};
    for (int r = 1; r <= max_r; ++r) {
        const auto& prev = rows[r - 1];
        std::vector<Integer> row(static_cast<std::size_t>(r) + 1, Integer(0));
        for (int n = 1; n <= r; ++n) {
            Integer same = n < r ? prev[n] * n : Integer(0);
            row[n] = same + prev[n - 1];
        }
        rows[r] = std::move(row);
    }
    return rows;
}

IntegerTable binomial_table(int max_n) {
    if (max_n < 0) throw InvalidInput("table size must be nonnegative");
    IntegerTable rows(static_cast<std::size_t>(max_n) + 1);
    rows[0] = {Integer(1)};
    for (int n = 1; n <= max_n; ++n) {
        std::vector<Integer> row(static_cast<std::size_t>(n) + 1, Integer(1));
        for (int k = 1; k < n; ++k) row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
        rows[n] = std::move(row);
    }
    return rows;
}

Integer stirling_first_signed(int n, int i) {
    if (n < 0 || i < 0 || i > n) {
        throw InvalidInput("stirling index out of range: n=" + std::to_string(n) + " i=" + std::to_string(i));
    }
    return stirling_first_table(n)[n][i];
}

Integer stirling_second(int r, int n) {
    if (r < 0 || n < 0 || n > r) {
        throw InvalidInput("stirling index out of range: r=" + std::to_string(r) + " n=" + std::to_string(n));
    }
    return stirling_second_table(r)[r][n];
}

}  // namespace amice
