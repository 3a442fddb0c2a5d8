#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperglue {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "p", "-p" and "p/q". Throws std::invalid_argument on bad input.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

int sign(const Integer& z);

}  // namespace hyperglue
