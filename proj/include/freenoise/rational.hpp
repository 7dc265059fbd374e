#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace freenoise {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and finite decimals such as "1.25".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

}  // namespace freenoise
