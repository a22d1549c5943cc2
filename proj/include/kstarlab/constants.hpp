// Certified evaluation of the Euler-product constants: the twin prime
// constant C2, the shifted-prime constant J, the prime-average constant
// (2/3) C2 J, the essential infimum u0 = (2/3) C2, the N = 1 product K(1),
// and the moment products mu_k and mu'_k.
//
// Every result carries a tail bound: a constant c with
// |log factor(ell)| <= c / ell^2 for all ell beyond the truncation point
// gives |log(true / value)| <= c / (P - 1), since sum_{n > P} 1/n^2 < 1/(P-1).
// Derived tail constants and validity thresholds:
//
//   C2 factor        1 - 1/(ell-1)^2                       c = 2    (ell >= 5)
//   J factor         1 + 1/((ell-2)(ell-1)(ell+1))         c = 1    (ell >= 5)
//   K(1) factor      1 - 1/((ell-1)^2 (ell+1))             c = 1    (ell >= 3)
//   mu2 reference    1 + poly(ell)/poly(ell)  ~ 1 + 1/ell^3 c = 2    (ell >= 3)
//   mu_k factor      P_A + P_B + P_C at exponent k          c = 16k  (ell >= 3k)
//   mu'_k factor     1 - 1/ell + (1/ell)(1-1/ell)^{-k}      c = 2k   (ell >= 257, k <= 64)
//
// The moment products therefore never truncate below 257, so the thresholds
// above always apply; the result records the truncation actually used.

#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace kstarlab::constants {

inline constexpr std::int64_t kDefaultTruncationPrime = 10'000'000;
inline constexpr int kMaxMomentExponent = 64;

enum class FactorKind {
  kGeneric,
  kC2,
  kJ,
  kPrimeMean,
  kU0,
  kKAt1,
  kMuK,
  kMuPrimeK,
  kMu2Reference,
};

struct FactorId {
  FactorKind kind = FactorKind::kGeneric;
  int k = 0;  // moment exponent, meaningful for kMuK / kMuPrimeK

  std::string name() const;
  friend bool operator==(const FactorId&, const FactorId&) = default;
};

struct EulerProductResult {
  double value = 1.0;
  std::int64_t truncation_prime = 0;
  double tail_bound = 0.0;  // certified bound on |log(true / value)|
  FactorId factor_id;
};

// prod_{ell <= truncation_prime} factor(ell) over primes, in ascending order.
// The caller certifies |log factor(ell)| <= tail_constant / ell^2 beyond the
// truncation point.  Throws std::domain_error on a nonpositive factor.
EulerProductResult euler_product(const std::function<double(std::int64_t)>& factor,
                                 std::int64_t truncation_prime, double tail_constant,
                                 FactorId id = {});

// Same product accumulated as a compensated sum of log factor(ell); used for
// the moment products with k >= 8 where direct multiplication would drift
// (or overflow) over ~10^6 factors.
EulerProductResult euler_product_log(const std::function<double(std::int64_t)>& factor,
                                     std::int64_t truncation_prime, double tail_constant,
                                     FactorId id = {});

enum class ConstantId { kC2, kJ, kPrimeMean, kU0, kKAt1 };

// C2   = prod_{p>2} (1 - 1/(p-1)^2)
// J    = prod_{p>2} (1 + 1/((p-2)(p-1)(p+1)))
// PRIME_MEAN = (2/3) C2 J   (tail bounds added in log space)
// U0   = (2/3) C2
// K(1) = prod_p (1 - 1/((p-1)^2 (p+1)))
EulerProductResult named_constant(ConstantId id, std::int64_t truncation_prime);

// k-th moment of K* over the integers:
//   mu_k = prod_ell (P_A(ell) + P_B(ell) + P_C(ell)) at exponent k.
// k = 1 returns exactly 1 with tail bound 0 (the per-prime factor is
// identically 1).  k = 0 is the trivial moment 1.  k > 64 is rejected.
EulerProductResult moment_mu(int k, std::int64_t truncation_prime);

// Schur's k-th moment of N/phi(N), an upper bound for mu_k:
//   mu'_k = prod_p (1 - 1/p + (1/p)(1 - 1/p)^{-k})
EulerProductResult moment_mu_prime(int k, std::int64_t truncation_prime);

// The explicit degree-8 rational form of mu_2,
//   prod_ell (1 + (ell^5 - ell^3 - 2 ell^2 - 2 ell - 1)
//                 / ((ell-1)^4 (ell+1)^2 (ell^2+ell+1))),
// kept as an independent cross-check on moment_mu(2).
EulerProductResult mu2_reference(std::int64_t truncation_prime);

// Production per-prime factor of mu_k: exact rationals below ell = 128,
// binary64 binomial closed form above (first-term dominant there).
// Exposed so tests can compare it against direct d-series summation.
double moment_factor(int k, std::int64_t ell);

}  // namespace kstarlab::constants
