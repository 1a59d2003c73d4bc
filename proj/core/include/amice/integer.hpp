#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace amice {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Deterministic Miller-Rabin for the full signed 64-bit range.
bool is_prime(std::int64_t n);

Integer ipow(const Integer& base, unsigned exponent);

// Representative of a modulo m in [0, m); m > 0.
Integer mod_floor(const Integer& a, const Integer& m);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

// v_p(n) for n != 0.
int valuation(Integer n, std::int64_t p);
int valuation(const Rational& x, std::int64_t p);

// Extended Euclid; throws InvalidInput when gcd(a, m) != 1.
Integer inverse_mod(const Integer& a, const Integer& m);

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::int64_t exponent, std::int64_t m);

// Legendre symbol (a/p) for an odd prime p.
int legendre(std::int64_t a, std::int64_t p);

// Kronecker symbol (d/n) for n > 0.
int kronecker(std::int64_t d, std::int64_t n);

// Tonelli-Shanks. Returns the least root in [0, p) or nullopt.
std::optional<std::int64_t> sqrt_mod_prime(std::int64_t a, std::int64_t p);

// Trial-division factorisation of |n|, n != 0. Primes ascending.
std::vector<std::pair<Integer, int>> factor(Integer n);
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);

// C(n, k) for any integer n (falling-factorial definition).
Integer binomial(const Integer& n, unsigned k);
Integer factorial(unsigned n);

std::string to_string(const Integer& n);
std::string to_string(const Rational& x);
Integer parse_integer(std::string_view text);
// Accepts "a", "-a", "a/b".
Rational parse_rational(std::string_view text);

std::int64_t to_int64(const Integer& n);

}  // namespace amice
