// Empirical distribution of K*(N) over N <= x: histogram CDF, raw moments,
// and the minimum.  The floor u0 = (2/3) C2 is always inserted as an
// explicit bin edge, which makes "zero mass below u0" an exact integer
// assertion rather than a tolerance check.

#pragma once

#include <cstdint>
#include <vector>

#include "kstarlab/arith.hpp"
#include "kstarlab/averages.hpp"
#include "kstarlab/kfun.hpp"

namespace kstarlab::distribution {

struct EmpiricalCdf {
  std::int64_t x = 0;
  // ascending, size counts.size() + 1; bins are half-open (lo, hi]
  std::vector<double> bin_edges;
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
  double u0 = 0;  // the explicit floor edge
};

// Histogram of {K*(N) : N <= x} with bins + 1 equal-width cells spanning
// [u0 - delta, max observed + delta], u0 inserted as an edge.  Two chunked
// passes: min/max, then bin-fill; per-chunk histograms merge by integer
// addition, so the result is independent of worker count.
EmpiricalCdf empirical_cdf(std::int64_t x, int bins, const kfun::RunConstants& consts,
                           const arith::SpfTable& table, int workers);
EmpiricalCdf empirical_cdf(std::int64_t x, int bins);

// Cumulative fraction at the largest bin edge <= u; 0 below the first edge,
// 1 at or above the last.
double cdf_query(const EmpiricalCdf& cdf, double u);

// Number of samples at or below u0 (exactly 0 unless the floor is violated).
std::int64_t mass_below_u0(const EmpiricalCdf& cdf);

// (1/x) sum_{N<=x} K*(N)^k under the same deterministic summation contract
// as the averages module; k = 1 reproduces partial_sums(ALL, x).mean
// bit-for-bit.
double empirical_moment(std::int64_t x, int k, const kfun::RunConstants& consts,
                        const arith::SpfTable& table, std::int64_t chunk, int workers);
double empirical_moment(std::int64_t x, int k);

struct MinKstar {
  std::int64_t n_min = 0;
  double value = 0;
  // whether n(n-1) is free of odd prime factors <= 7, the shape the
  // near-floor minimizers take
  bool rough_odd_part = false;
};

MinKstar min_kstar(std::int64_t x, const kfun::RunConstants& consts,
                   const arith::SpfTable& table, int workers);
MinKstar min_kstar(std::int64_t x);

// Full-sample sorted values, the exact-CDF oracle for small x (<= 10^6).
std::vector<double> exact_kstar_sorted(std::int64_t x, const kfun::RunConstants& consts,
                                       const arith::SpfTable& table);

inline constexpr int kMaxMomentK = 16;

}  // namespace kstarlab::distribution
