#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "bunkbed/errors.hpp"

namespace bunkbed {

// Exact arithmetic everywhere except the p-resistance solver:
// capacities/resistances are rationals, SAW counts are big integers.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

// "p/q" when the denominator is not 1, plain integer otherwise.
std::string rational_to_string(const Rational& x);

// Accepts "3", "-3", "7/2"; rejects everything else (including q = 0).
Rational parse_rational(std::string_view text);

} // namespace bunkbed
