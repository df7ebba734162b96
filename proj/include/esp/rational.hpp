#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace esp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "a/b", an integer, or a plain decimal like "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

/// Smallest integer >= r.
BigInt ceil_rational(const Rational& r);

double to_double(const Rational& r);

} // namespace esp
