#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace plumb {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num/den reduced, for any non-zero den. (The two-argument Rational
/// constructor rejects negative denominators.)
Rational ratio(Int num, Int den);

inline std::string to_string(const Int& v) { return v.str(); }

/// "p/q" with q > 0, or "p" when q == 1.
std::string to_string(const Rational& r);

/// Exact ("num","den") pair used by the JSON writers.
std::pair<std::string, std::string> to_pair(const Rational& r);

Int isqrt(const Int& v);

/// floor(a / b) for b > 0.
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);

}  // namespace plumb
