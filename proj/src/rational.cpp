#include "rational.hpp"

#include <stdexcept>

namespace cfp {

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int ceil_log(const Rational& base, const Rational& x) {
  if (base <= 1 || x <= 0) throw std::invalid_argument("ceil_log: base > 1 and x > 0 required");
  int p = 0;
  Rational pow = 1;
  while (pow < x) {
    pow *= base;
    ++p;
  }
  return p;
}

Rational round_up_to_power(const Rational& base, const Rational& x) {
  if (base <= 1 || x <= 0) throw std::invalid_argument("round_up_to_power: base > 1 and x > 0 required");
  Rational pow = 1;
  if (pow >= x) {
    while (pow / base >= x) pow /= base;
    return pow;
  }
  while (pow < x) pow *= base;
  return pow;
}

}  // namespace cfp
