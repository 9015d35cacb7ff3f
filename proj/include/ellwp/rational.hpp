#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ellwp {

// Exact arbitrary-precision rationals; always stored normalized.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Parses "p", "-p" or "p/q" (q > 0 after normalization).  Throws ParseError.
Rational parse_rational(const std::string& text);

// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rational_string(const Rational& r);

}  // namespace ellwp
