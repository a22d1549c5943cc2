// The K function family.  For a positive integer N, with chi(a, p) the
// Kronecker symbol (a|p),
//
//   K(N)  = prod_{p ∤ N} (1 - (chi(N-1,p)^2 p + 1) / ((p-1)^2 (p+1)))
//           * prod_{p^a || N} (1 - 1/(p^a (p-1)))
//   K*(N) = K(N) N / phi(N)
//
// K is not multiplicative, but it factors through two multiplicative
// functions and the twin prime constant:
//
//   K(N) = C2 * F(N-1) * G(N), where
//   F(n) = prod_{p|n, p>2} (1 - 1/(p-1)^2)^{-1} * prod_{p|n} (1 - 1/((p-1)^2 (p+1)))
//   G(n) = prod_{p|n, p>2} (1 - 1/(p-1)^2)^{-1} * prod_{p^a || n} (1 - 1/(p^a (p-1)))
//
// (The factor (1 - 1/(p-1)^2)^{-1} is excluded at p = 2, where it would
// divide by zero; F depends only on the radical of n, G on the full
// prime-power decomposition.)  This module evaluates the exact decomposition
// path, the z-truncated direct forms K_z and R_z, and the variant K°, which
// replaces the even-exponent factors of K* by
//   1 - (p - chi(-N_p, p)) / (p^{a+1} (p-1)),   N_p = N / p^{v_p(N)}.

#pragma once

#include <cstdint>
#include <optional>

#include "kstarlab/arith.hpp"
#include "kstarlab/constants.hpp"

namespace kstarlab::kfun {

// Certified constants injected once per run from the constants module:
// C2 feeds every decomposition-path evaluation, and K(1) covers the N = 1
// case, where the decomposition would need F(0).
struct RunConstants {
  double c2 = 0;
  double k_at_1 = 0;
  std::int64_t truncation_prime = 0;
  double c2_tail_bound = 0;
};

RunConstants run_constants(std::int64_t truncation_prime = constants::kDefaultTruncationPrime);

enum class KMethod { kDecomposition, kTruncatedDirect };

struct KValue {
  std::int64_t n = 0;
  double k = 0;       // K(n), in (0, 1]
  double k_star = 0;  // K*(n) = K(n) n/phi(n), always > u0 = (2/3) C2
  KMethod method = KMethod::kDecomposition;
  std::optional<double> truncation_z;
};

// F(n); depends only on the radical of n.  Requires n >= 1.
double big_f(const arith::Factorization& f);

// G(n); depends on the full prime-power decomposition.
double big_g(const arith::Factorization& f);

// R(n) = n/phi(n) = prod_{p|n} (1 - 1/p)^{-1}
double r_ratio(const arith::Factorization& f);

// Multiplicative kernel of the divisor-sum expansion F(n) = sum_{d|n} g(d):
// g vanishes off squarefree d, g(2) = -1/3, g(ell) = 1/((ell-2)(ell+1)).
double aux_g(const arith::Factorization& f);

// K and K* for n >= 2 via the decomposition; K(1) = K*(1) is the dedicated
// Euler product carried by RunConstants.
KValue k_exact(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table);

// The one evaluation kernel behind k_exact and every batch loop; keeping a
// single code path makes streamed values bit-identical to k_exact's.
struct KParts {
  double k = 0;
  double k_star = 0;
  double r = 0;  // R(n) = n/phi(n)
};
KParts k_parts(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table);

double k_of(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table);
double k_star_of(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table);

// K_z(n): both products of K restricted to primes p <= z, evaluated directly
// from the definition (Kronecker symbol and all).  Satisfies
// K(n) <= K_z(n) <= 1; z < 2 gives the empty product 1.
double k_truncated(std::int64_t n, double z, const arith::SpfTable& table);

// R_z(n) = prod_{p|n, p<=z} (1 - 1/p)^{-1}; 1 <= R_z(n) <= R(n).
double r_truncated(std::int64_t n, double z, const arith::SpfTable& table);

// K°(n) for n >= 2, through the finite form R(n) C2 F(n-1) G°(n), where G°
// keeps the odd-exponent factors of G and replaces the even-exponent ones by
// 1 - (p - chi(-N_p, p)) / (p^{a+1}(p-1)).  The p ∤ N product of K° equals
// that of K, which is what makes the C2 F(n-1) route valid.
double k_circ(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table);

}  // namespace kstarlab::kfun
