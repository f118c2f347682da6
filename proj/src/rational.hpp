#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace cfp {

// Exact arithmetic throughout: radii, reduced costs, and lower bounds are
// rationals, so "reduced cost is zero" tests are exact comparisons.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);

// Parses "p" or "p/q" with q > 0 after sign normalization.
std::optional<Rational> parse_rational(const std::string& text);

// Smallest integer p >= 0 with base^p >= x. Requires base > 1 and x > 0.
int ceil_log(const Rational& base, const Rational& x);

// Smallest power base^k (k may be negative) that is >= x. Requires base > 1, x > 0.
Rational round_up_to_power(const Rational& base, const Rational& x);

}  // namespace cfp
