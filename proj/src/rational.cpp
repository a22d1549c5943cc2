#include "kstarlab/rational.hpp"

#include <stdexcept>

namespace kstarlab {

std::string to_fraction_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

Rational rational_pow(const Rational& x, long e) {
  if (e < 0) {
    if (x == 0) throw std::domain_error("rational_pow: 0 to a negative power");
    return rational_pow(Rational(1) / x, -e);
  }
  Rational result(1);
  Rational base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

}  // namespace kstarlab
