#include "kstarlab/distribution.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "kstarlab/parallel.hpp"

namespace kstarlab::distribution {

namespace {

constexpr std::int64_t kScanChunk = 65'536;

struct MinMax {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

MinMax scan_min_max(std::int64_t x, const kfun::RunConstants& consts,
                    const arith::SpfTable& table, int workers) {
  auto results = parallel::map_chunks<MinMax>(
      1, x, kScanChunk, workers, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        MinMax mm;
        for (std::int64_t n = lo; n <= hi; ++n) {
          const double v = kfun::k_star_of(n, consts, table);
          mm.min = std::min(mm.min, v);
          mm.max = std::max(mm.max, v);
        }
        return mm;
      });
  MinMax out;
  for (const MinMax& mm : results) {
    out.min = std::min(out.min, mm.min);
    out.max = std::max(out.max, mm.max);
  }
  return out;
}

}  // namespace

EmpiricalCdf empirical_cdf(std::int64_t x, int bins, const kfun::RunConstants& consts,
                           const arith::SpfTable& table, int workers) {
  if (x < 10) throw std::domain_error("empirical_cdf: x must be >= 10");
  if (bins < 10) throw std::domain_error("empirical_cdf: bins must be >= 10");
  if (x > table.limit()) throw std::domain_error("empirical_cdf: x exceeds the sieve limit");

  const double u0 = 2.0 / 3.0 * consts.c2;
  const MinMax mm = scan_min_max(x, consts, table, workers);

  EmpiricalCdf cdf;
  cdf.x = x;
  cdf.u0 = u0;
  const double width = (std::max(mm.max, u0 + 1e-9) - u0) / static_cast<double>(bins);
  const double delta = width / 2.0;
  // edges: u0 - delta, u0, then `bins` equal cells up to max + delta
  cdf.bin_edges.reserve(static_cast<std::size_t>(bins) + 2);
  cdf.bin_edges.push_back(u0 - delta);
  cdf.bin_edges.push_back(u0);
  const double hi = std::max(mm.max, u0 + 1e-9) + delta;
  const double cell = (hi - u0) / static_cast<double>(bins);
  for (int i = 1; i <= bins; ++i) {
    cdf.bin_edges.push_back(u0 + cell * static_cast<double>(i));
  }
  const int n_bins = bins + 1;

  auto results = parallel::map_chunks<std::vector<std::int64_t>>(
      1, x, kScanChunk, workers, [&](std::int64_t, std::int64_t lo, std::int64_t hi_n) {
        std::vector<std::int64_t> local(static_cast<std::size_t>(n_bins), 0);
        for (std::int64_t n = lo; n <= hi_n; ++n) {
          const double v = kfun::k_star_of(n, consts, table);
          // v lands in (edges[i], edges[i+1]]
          auto it = std::lower_bound(cdf.bin_edges.begin(), cdf.bin_edges.end(), v);
          auto idx = static_cast<std::int64_t>(it - cdf.bin_edges.begin()) - 1;
          idx = std::clamp<std::int64_t>(idx, 0, n_bins - 1);
          ++local[static_cast<std::size_t>(idx)];
        }
        return local;
      });

  cdf.counts.assign(static_cast<std::size_t>(n_bins), 0);
  for (const auto& local : results) {
    for (int i = 0; i < n_bins; ++i) cdf.counts[static_cast<std::size_t>(i)] += local[static_cast<std::size_t>(i)];
  }
  cdf.total = x;
  return cdf;
}

EmpiricalCdf empirical_cdf(std::int64_t x, int bins) {
  const arith::SpfTable table(std::max<std::int64_t>(x, 2));
  return empirical_cdf(x, bins, kfun::run_constants(), table, parallel::default_workers());
}

double cdf_query(const EmpiricalCdf& cdf, double u) {
  if (cdf.bin_edges.empty() || u < cdf.bin_edges.front()) return 0.0;
  if (u >= cdf.bin_edges.back()) return 1.0;
  // largest edge <= u
  auto it = std::upper_bound(cdf.bin_edges.begin(), cdf.bin_edges.end(), u);
  const auto edge_idx = static_cast<std::size_t>(it - cdf.bin_edges.begin()) - 1;
  std::int64_t below = 0;
  for (std::size_t i = 0; i < edge_idx; ++i) below += cdf.counts[i];
  return static_cast<double>(below) / static_cast<double>(cdf.total);
}

std::int64_t mass_below_u0(const EmpiricalCdf& cdf) {
  std::int64_t mass = 0;
  for (std::size_t i = 0; i + 1 < cdf.bin_edges.size(); ++i) {
    if (cdf.bin_edges[i + 1] <= cdf.u0) mass += cdf.counts[i];
  }
  return mass;
}

double empirical_moment(std::int64_t x, int k, const kfun::RunConstants& consts,
                        const arith::SpfTable& table, std::int64_t chunk, int workers) {
  if (x < 2) throw std::domain_error("empirical_moment: x must be >= 2");
  if (k < 1 || k > kMaxMomentK) throw std::domain_error("empirical_moment: k out of [1, 16]");
  if (x > table.limit()) throw std::domain_error("empirical_moment: x exceeds the sieve limit");
  auto results = parallel::map_chunks<parallel::CompensatedSum>(
      1, x, chunk, workers, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        parallel::CompensatedSum acc;
        for (std::int64_t n = lo; n <= hi; ++n) {
          const double v = kfun::k_star_of(n, consts, table);
          double p = v;
          for (int j = 1; j < k; ++j) p *= v;
          acc.add(p);
        }
        return acc;
      });
  parallel::CompensatedSum total;
  for (const auto& part : results) total.merge(part);
  return total.value() / static_cast<double>(x);
}

double empirical_moment(std::int64_t x, int k) {
  const arith::SpfTable table(std::max<std::int64_t>(x, 2));
  return empirical_moment(x, k, kfun::run_constants(), table, averages::kDefaultChunk,
                          parallel::default_workers());
}

MinKstar min_kstar(std::int64_t x, const kfun::RunConstants& consts,
                   const arith::SpfTable& table, int workers) {
  if (x < 2) throw std::domain_error("min_kstar: x must be >= 2");
  if (x > table.limit()) throw std::domain_error("min_kstar: x exceeds the sieve limit");
  struct ArgMin {
    std::int64_t n = 0;
    double value = std::numeric_limits<double>::infinity();
  };
  auto results = parallel::map_chunks<ArgMin>(
      1, x, kScanChunk, workers, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        ArgMin best;
        for (std::int64_t n = lo; n <= hi; ++n) {
          const double v = kfun::k_star_of(n, consts, table);
          if (v < best.value) best = {n, v};
        }
        return best;
      });
  ArgMin best;
  for (const ArgMin& part : results) {
    if (part.value < best.value) best = part;  // ties keep the smallest n
  }
  MinKstar out;
  out.n_min = best.n;
  out.value = best.value;
  out.rough_odd_part = true;
  for (const std::int64_t p : {3, 5, 7}) {
    if (best.n % p == 0 || (best.n - 1) % p == 0) out.rough_odd_part = false;
  }
  return out;
}

MinKstar min_kstar(std::int64_t x) {
  const arith::SpfTable table(std::max<std::int64_t>(x, 2));
  return min_kstar(x, kfun::run_constants(), table, parallel::default_workers());
}

std::vector<double> exact_kstar_sorted(std::int64_t x, const kfun::RunConstants& consts,
                                       const arith::SpfTable& table) {
  if (x < 1 || x > 1'000'000) {
    throw std::length_error("exact_kstar_sorted: full-sample mode is for x <= 10^6");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(x));
  averages::stream_kstar(x, consts, table, [&](std::int64_t, double v) { values.push_back(v); });
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace kstarlab::distribution
