#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace catfab {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always reduced to lowest terms.
using Rational = boost::multiprecision::cpp_rational;

BigInt big_factorial(unsigned n);
BigInt big_binomial(unsigned n, unsigned k);
BigInt big_pow2(unsigned n);

double to_double(const Rational& r);

/// "num/den" in lowest terms; integers render as "n/1".
std::string fraction_string(const Rational& r);

/// Inverse of fraction_string. Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_fraction(const std::string& text);

}  // namespace catfab
