#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace nilcomp {

using Integer = mpz_class;
using Rational = mpq_class;

Integer floor_of(const Rational& x);

/// x - floor(x), always in [0, 1).
Rational frac(const Rational& x);

/// Representative of x modulo m*Z in [0, m). m must be positive.
Rational reduce_mod(const Rational& x, const Rational& m);

bool is_integer(const Rational& x);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer factorial(unsigned n);
Integer ipow(const Integer& base, unsigned long exponent);

/// Generalized binomial coefficient t(t-1)...(t-k+1)/k! for any rational t.
Rational binomial(const Rational& t, unsigned k);
Integer binomial(const Integer& n, unsigned k);

/// Distinct prime factors of a positive integer (trial division).
std::vector<Integer> prime_factors(Integer n);

std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

/// Parses "p", "-p", "p/q" (whitespace-trimmed). Throws Error(Parse).
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::int64_t to_int64(const Integer& x);

}  // namespace nilcomp
