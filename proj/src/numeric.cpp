#include "plumb/numeric.hpp"

#include "plumb/errors.hpp"

namespace plumb {

std::string to_string(const Rational& r) {
  const Int num = numerator(r);
  const Int den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::pair<std::string, std::string> to_pair(const Rational& r) {
  return {numerator(r).str(), denominator(r).str()};
}

Rational ratio(Int num, Int den) {
  if (den == 0) throw std::domain_error("ratio: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

Int isqrt(const Int& v) {
  if (v < 0) throw std::domain_error("isqrt of a negative number");
  if (v < 2) return v;
  Int s = boost::multiprecision::sqrt(v);
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

GraphError::GraphError(Kind kind, const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line == 0 ? what
                                   : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      kind_(kind),
      line_(line),
      column_(column) {}

BoundExceeded::BoundExceeded(long long expansion)
    : std::runtime_error("no relation path inside the box expanded by " + std::to_string(expansion)),
      expansion_(expansion) {}

}  // namespace plumb
