// Configuration-space combinatorics over the primes up to z, in exact
// rational arithmetic throughout.
//
// A configuration partitions the primes ell <= z into three sets by their
// divisibility relation to a pair (N-1, N):
//   A: ell divides neither N nor N-1
//   B: ell divides N, with recorded exponent e_ell = v_ell(N) >= 1
//   C: ell divides N-1
// Its natural density among integers is
//   d_sigma = prod_A (1 - 2/ell) * prod_B ell^{-e}(1 - 1/ell) * prod_C 1/ell,
// its defining modulus is
//   m_sigma = prod_{A union C} ell * prod_B ell^{e+1},
// and the truncated product K_z R_z is constant on each configuration:
//   K_z R_z (sigma) = prod_A (1 - 1/(ell-1)^2)
//                   * prod_B (1 - 1/(ell^e (ell-1))) (1 - 1/ell)^{-1}
//                   * prod_C (1 - 1/((ell-1)^2 (ell+1))).
//
// Summing K_z^k R_z^k d_sigma over all configurations factors through the
// per-prime weights (P_A, P_B, P_C); at k = 1 they satisfy
// P_A + P_B + P_C = 1 identically, so the full sum telescopes to exactly 1.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kstarlab/arith.hpp"
#include "kstarlab/rational.hpp"

namespace kstarlab::configspace {

// Enumeration over configurations is 3^pi(z) times the exponent choices;
// these caps keep the state space trivially small.
inline constexpr double kMaxEnumerationZ = 13.0;
inline constexpr int kMaxExponentBound = 16;
inline constexpr std::int64_t kMaxGl2Prime = 13;

struct Configuration {
  double z = 0;
  std::vector<std::int64_t> set_a;  // sorted ascending
  std::vector<std::int64_t> set_b;  // sorted ascending
  std::vector<std::int64_t> set_c;  // sorted ascending
  std::vector<int> exponents;       // parallel to set_b, each >= 1

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// The configuration of n relative to the primes <= z:
// set_a = {ell <= z : ell ∤ n(n-1)}, set_b = {ell | n} with e = v_ell(n),
// set_c = {ell | n-1}.  Requires n >= 2.
Configuration sigma_of(std::int64_t n, double z, const arith::SpfTable& table);

// Exact density; 0 <= d <= 1, and d = 0 iff 2 is in set_a.
Rational d_sigma(const Configuration& sigma);

// Exact modulus; throws std::overflow_error beyond 2^62.
std::int64_t m_sigma(const Configuration& sigma);

// Exact value of K_z R_z on the configuration.
Rational kzrz_of_sigma(const Configuration& sigma);

struct PSplit {
  Rational p_a;
  Rational p_b;
  Rational p_c;
};

// Per-prime weights at exponent k >= 1.  P_B's sum over e >= 1 is evaluated
// by the closed binomial form
//   P_B = (1 - 1/ell)^{1-k} * sum_{j=0}^{k} C(k,j) (-1)^j (ell-1)^{-j} / (ell^{j+1} - 1),
// exact in rationals.  At k = 1 these reduce to
//   P_A = ((ell-2)/(ell-1))^2, P_B = (ell^2-2)/((ell+1)(ell-1)^2),
//   P_C = (ell^2-ell-1)/((ell-1)^2 (ell+1)),
// which sum to exactly 1.
PSplit p_split(std::int64_t ell, int k);

// Per-prime B-weight with the exponent sum truncated at e_max (oracle mode).
Rational p_b_truncated(std::int64_t ell, int k, int e_max);

enum class TwoCell { kAny, kB, kC };

// sum over configurations of K_z(sigma)^k R_z(sigma)^k d_sigma, enumerated
// over all 3^pi(z) set assignments with exact per-prime weights.  Without
// e_max the B-weights use the closed form and the k = 1 sum is exactly 1;
// with e_max the B-sums are truncated, yielding a strict lower partial sum.
Rational identity_sum(double z, int k, std::optional<int> e_max = std::nullopt);

// Same sum restricted by the cell that holds the prime 2 (kC corresponds to
// odd N; kB to even N).  Exposed for the complementary-sum checks.
Rational identity_sum_restricted(double z, int k, TwoCell two_cell,
                                 std::optional<int> e_max = std::nullopt);

// The k = 1 sum restricted to 2 in C; exactly 1/3 for every z >= 2.
Rational identity_sum_odd(double z);

struct DensityCheck {
  std::int64_t count = 0;  // #{2 <= n <= x : sigma_of(n, z) == sigma}
  double expected = 0;     // d_sigma * x
};

DensityCheck density_check(const Configuration& sigma, std::int64_t x,
                           const arith::SpfTable& table);

// Exhaustive distribution of det(g) + 1 - tr(g) mod ell over GL_2(F_ell);
// entry r is the exact fraction of group elements with that residue.
// Matches p_split(ell, 1): entry 0 = P_B, entry 1 = P_C, others P_A/(ell-2).
std::vector<Rational> gl2_distribution(std::int64_t ell);

}  // namespace kstarlab::configspace
