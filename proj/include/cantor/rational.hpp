#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace cantor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 50 significant digits; used only where a value is not exactly representable.
using Decimal = boost::multiprecision::cpp_dec_float_50;

/// base^exp for any integer exponent (negative gives the reciprocal).
Rational rational_pow(std::int64_t base, std::int64_t exp);

/// Always "num/den", including integers ("3/1").
std::string to_fraction_string(const Rational& r);

/// Accepts "a", "a/b", "-a/b" and plain decimals such as "0.3".
Rational parse_rational(const std::string& text);

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);

Decimal to_decimal(const Rational& r);
double to_double(const Rational& r);

}  // namespace cantor
