#include "kstarlab/ecbox.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kstarlab::ecbox {

namespace {

// curves with p^2 below this use a per-prime (a mod p, b mod p) count table
// inside box sweeps; the build is O(p^3) per prime
constexpr std::int64_t kBoxTablePrimeLimit = 256;

std::int64_t mod_pos(std::int64_t v, std::int64_t p) { return ((v % p) + p) % p; }

bool is_prime_trial(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// #E(F_p) from a precomputed character table
std::int64_t point_count_chi(std::int64_t a, std::int64_t b, std::int64_t p,
                             const std::int8_t* chi) {
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t fx = (((x * x % p) * x % p) + a * x % p + b) % p;
    sum += chi[mod_pos(fx, p)];
  }
  return p + 1 + sum;
}

// candidate primes for the Hasse window of N, smallest first
template <typename Fn>
void for_window_primes(std::int64_t n_target, const arith::SpfTable& table, Fn&& fn) {
  const std::int64_t s = arith::isqrt(n_target);
  const std::int64_t lo = std::max<std::int64_t>(2, n_target + 1 - 2 * s - 2);
  const std::int64_t hi = n_target + 1 + 2 * s + 2;
  for (std::int64_t p = lo; p <= hi; ++p) {
    // integer-exact Hasse window test: |N - (p+1)| <= 2 sqrt(p)
    const std::int64_t d = n_target - p - 1;
    if (d * d > 4 * p) continue;
    const bool prime = p <= table.limit() ? table.is_prime(p) : is_prime_trial(p);
    if (prime) fn(p);
  }
}

}  // namespace

CurveSpec make_curve(std::int64_t a, std::int64_t b) {
  if (a < -kMaxCoefficient || a > kMaxCoefficient || b < -kMaxCoefficient || b > kMaxCoefficient) {
    throw std::domain_error("make_curve: |a|, |b| capped at 2^20");
  }
  const std::int64_t core = 4 * a * a * a + 27 * b * b;
  if (core == 0) {
    throw std::domain_error("make_curve: singular curve, -16(4a^3+27b^2) = 0");
  }
  return CurveSpec{a, b, core};
}

bool good_reduction(const CurveSpec& curve, std::int64_t p) {
  return p >= 5 && curve.disc_core % p != 0;
}

std::int64_t point_count(const CurveSpec& curve, std::int64_t p) {
  if (!good_reduction(curve, p)) {
    throw std::domain_error("point_count: bad reduction at p = " + std::to_string(p));
  }
  const std::int64_t a = mod_pos(curve.a, p);
  const std::int64_t b = mod_pos(curve.b, p);
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t fx = (((x * x % p) * x % p) + a * x % p + b) % p;
    sum += arith::kronecker(fx, p);
  }
  return p + 1 + sum;
}

std::vector<std::int8_t> quadratic_character_table(std::int64_t p) {
  std::vector<std::int8_t> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1; y <= p / 2; ++y) {
    chi[static_cast<std::size_t>(y * y % p)] = 1;
  }
  return chi;
}

std::int64_t m_e(const CurveSpec& curve, std::int64_t n_target, const arith::SpfTable& table) {
  if (n_target < 1) throw std::domain_error("m_e: N must be positive");
  std::int64_t count = 0;
  for_window_primes(n_target, table, [&](std::int64_t p) {
    if (good_reduction(curve, p) && point_count(curve, p) == n_target) ++count;
  });
  return count;
}

BoxReport box_average(std::int64_t n, std::int64_t box_a, std::int64_t box_b,
                      const kfun::RunConstants& consts, const arith::SpfTable& table) {
  if (n < 5) throw std::domain_error("box_average: N must be >= 5");
  if (box_a < 1 || box_b < 1) throw std::domain_error("box_average: A, B must be >= 1");
  if ((2 * box_a + 1) * (2 * box_b + 1) > kMaxBoxCurves) {
    throw std::length_error("box_average: box exceeds the 10^7 curve budget");
  }
  if (box_a > kMaxCoefficient || box_b > kMaxCoefficient) {
    throw std::domain_error("box_average: coefficients capped at 2^20");
  }

  // window primes, with per-prime count tables where affordable
  std::vector<std::int64_t> primes;
  for_window_primes(n, table, [&](std::int64_t p) {
    if (p >= 5) primes.push_back(p);
  });
  std::vector<std::vector<std::int32_t>> count_tables(primes.size());
  std::vector<std::vector<std::int8_t>> chi_tables(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::int64_t p = primes[i];
    const auto chi = quadratic_character_table(p);
    if (p <= kBoxTablePrimeLimit) {
      // counts indexed by (a mod p) * p + (b mod p); -1 marks bad reduction
      std::vector<std::int32_t> counts(static_cast<std::size_t>(p * p));
      for (std::int64_t am = 0; am < p; ++am) {
        for (std::int64_t bm = 0; bm < p; ++bm) {
          const std::int64_t core = (4 * am % p) * (am * am % p) % p + 27 * bm % p * bm % p;
          if (core % p == 0) {
            counts[static_cast<std::size_t>(am * p + bm)] = -1;
          } else {
            counts[static_cast<std::size_t>(am * p + bm)] =
                static_cast<std::int32_t>(point_count_chi(am, bm, p, chi.data()));
          }
        }
      }
      count_tables[i] = std::move(counts);
    } else {
      chi_tables[i] = chi;
    }
  }

  BoxReport report;
  report.n = n;
  report.box_a = box_a;
  report.box_b = box_b;
  std::int64_t me_total = 0;
  for (std::int64_t a = -box_a; a <= box_a; ++a) {
    for (std::int64_t b = -box_b; b <= box_b; ++b) {
      if (4 * a * a * a + 27 * b * b == 0) continue;
      ++report.curve_count;
      const CurveSpec curve{a, b, 4 * a * a * a + 27 * b * b};
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::int64_t p = primes[i];
        if (!count_tables[i].empty()) {
          const std::int32_t c =
              count_tables[i][static_cast<std::size_t>(mod_pos(a, p) * p + mod_pos(b, p))];
          if (c == n) ++me_total;
        } else {
          if (good_reduction(curve, p) &&
              point_count_chi(mod_pos(a, p), mod_pos(b, p), p, chi_tables[i].data()) == n) {
            ++me_total;
          }
        }
      }
    }
  }
  report.avg_me = static_cast<double>(me_total) / static_cast<double>(report.curve_count);
  report.prediction =
      kfun::k_star_of(n, consts, table) / std::log(static_cast<double>(n));
  report.ratio = report.avg_me / report.prediction;
  return report;
}

SumMe sum_me(const CurveSpec& curve, std::int64_t x) {
  if (x < 10) throw std::domain_error("sum_me: x must be >= 10");
  const std::int64_t s = arith::isqrt(x);
  const std::int64_t p_hi = (s + 1) * (s + 1);
  SumMe result;
  arith::for_primes_up_to(p_hi, [&](std::int64_t p) {
    if (p <= x) ++result.pi_x;
    if (!good_reduction(curve, p)) return;
    const std::int64_t n = point_count(curve, p);
    if (n <= x) {
      ++result.sum;
      if (n & 1) ++result.odd_sum;
    }
  });
  return result;
}

bool cubic_has_rational_root(std::int64_t a, std::int64_t b) {
  // monic integer cubic: any rational root is an integer dividing b
  if (b == 0) return true;  // root 0
  const std::int64_t ab = b < 0 ? -b : b;
  for (std::int64_t d = 1; d * d <= ab; ++d) {
    if (ab % d != 0) continue;
    for (const std::int64_t r : {d, -d, ab / d, -(ab / d)}) {
      if (r * r * r + a * r + b == 0) return true;
    }
  }
  return false;
}

}  // namespace kstarlab::ecbox
