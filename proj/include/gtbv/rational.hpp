#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

namespace gtbv {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) through all arithmetic.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Serializes as "p" for integers, "p/q" otherwise; q > 0 always.
std::string to_string(const Rational& r);

// Accepts "p" or "p/q" with optional leading '-'. Throws ParseError.
Rational rational_from_string(const std::string& s);

// Uniform numerator in [-bound, bound] \ {0 if nonzero} over denominator 1.
Rational random_int_rational(std::mt19937_64& rng, int bound, bool nonzero = false);

}  // namespace gtbv
