// Desk-scale elliptic-curve ground truth over F_p for short Weierstrass
// curves y^2 = x^3 + a x + b.
//
//   #E(F_p) = p + 1 + sum_{x mod p} chi(x^3 + a x + b),  chi = (.|p),
//
// counted brute-force.  Good reduction for this model is taken as p >= 5
// and p not dividing -16(4a^3 + 27b^2); p = 2, 3 are always skipped.
// M_E(N) counts good primes with #E(F_p) = N; such p are confined to the
// window ((sqrt N - 1)^2, (sqrt N + 1)^2), tested integer-exactly as
// (N - p - 1)^2 <= 4p.

#pragma once

#include <cstdint>
#include <vector>

#include "kstarlab/arith.hpp"
#include "kstarlab/kfun.hpp"

namespace kstarlab::ecbox {

// keeps 4a^3 + 27b^2 within int64
inline constexpr std::int64_t kMaxCoefficient = std::int64_t{1} << 20;
// box enumeration budget: (2A+1)(2B+1) curves
inline constexpr std::int64_t kMaxBoxCurves = 10'000'000;

struct CurveSpec {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t disc_core = 0;  // 4a^3 + 27b^2, nonzero; disc = -16 * disc_core
};

// Validates the nondegeneracy condition -16(4a^3+27b^2) != 0.
CurveSpec make_curve(std::int64_t a, std::int64_t b);

bool good_reduction(const CurveSpec& curve, std::int64_t p);

// #E(F_p) including the point at infinity; requires good reduction.
// Satisfies the Hasse bound |#E(F_p) - (p+1)| <= 2 sqrt(p).
std::int64_t point_count(const CurveSpec& curve, std::int64_t p);

// chi(t) for t in [0, p) as a lookup table; the fast path for box sweeps.
std::vector<std::int8_t> quadratic_character_table(std::int64_t p);

// M_E(N) = #{good p : #E(F_p) = N}; only window primes are examined.
// The table accelerates the primality scan when it covers the window.
std::int64_t m_e(const CurveSpec& curve, std::int64_t n_target, const arith::SpfTable& table);

struct BoxReport {
  std::int64_t n = 0;
  std::int64_t box_a = 0;
  std::int64_t box_b = 0;
  std::int64_t curve_count = 0;  // #{(a,b) : |a|<=A, |b|<=B, disc != 0}
  double avg_me = 0;             // mean of M_E(N) over the box
  double prediction = 0;         // K*(N) / log N
  double ratio = 0;              // avg_me / prediction
};

// Average of M_E(N) over the curve box |a| <= A, |b| <= B (Weierstrass
// pairs, not isomorphism classes), against the K*(N)/log N prediction.
// Diagnostic: the prediction is asymptotic in N with A, B >> sqrt(N), so
// only loose agreement is expected at desk scale.
BoxReport box_average(std::int64_t n, std::int64_t box_a, std::int64_t box_b,
                      const kfun::RunConstants& consts, const arith::SpfTable& table);

struct SumMe {
  std::int64_t sum = 0;   // sum_{N<=x} M_E(N) = #{good p <= (sqrt x + 1)^2 : #E <= x}
  std::int64_t pi_x = 0;  // pi(x)
  std::int64_t odd_sum = 0;  // same count restricted to odd #E
};

SumMe sum_me(const CurveSpec& curve, std::int64_t x);

// Rational-root test for X^3 + aX + b; an irreducible cubic is the generic
// case, where odd point counts arise with density 1/3.
bool cubic_has_rational_root(std::int64_t a, std::int64_t b);

}  // namespace kstarlab::ecbox
