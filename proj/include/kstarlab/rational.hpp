// Exact rational arithmetic used wherever an identity is checked by equality
// rather than by tolerance.  Backed by boost::multiprecision; the wrapper
// keeps the rest of the codebase independent of that choice.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace kstarlab {

using BigInt = boost::multiprecision::cpp_int;

// Always stored reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// "p/q" (just "p" when q == 1)
std::string to_fraction_string(const Rational& r);

// x^e for integer e (negative allowed when x != 0)
Rational rational_pow(const Rational& x, long e);

}  // namespace kstarlab
