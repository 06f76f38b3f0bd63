#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace peg {

// All probabilities, payoffs and values are exact rationals. GMP-backed;
// arithmetic results are always canonical (reduced, positive denominator).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Parses "num/den" or "num" (optionally signed). Throws ParseError on
// anything else, including zero denominators and decimal points.
Rational parse_rational(const std::string& text);

// Renders as "num/den", always with an explicit denominator ("0/1", "-3/2").
std::string to_frac(const Rational& r);

double to_double(const Rational& r);

// floor(r / step) * step for step > 0.
Rational floor_to_multiple(const Rational& r, const Rational& step);

}  // namespace peg
