// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fatal criterion fails.  Criterion 9 is diagnostic by design: out-of-band
// curve boxes are logged, and the criterion itself asks only that a majority
// stay within the band.
//
// Run from the build tree:  ./acceptance

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kstarlab/averages.hpp"
#include "kstarlab/configspace.hpp"
#include "kstarlab/constants.hpp"
#include "kstarlab/distribution.hpp"
#include "kstarlab/ecbox.hpp"
#include "kstarlab/kfun.hpp"
#include "kstarlab/parallel.hpp"

using namespace kstarlab;

namespace {

int g_failures = 0;

struct Criterion {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

std::vector<Criterion> g_results;

void record(int id, const std::string& name, bool passed, const std::string& detail,
            double seconds) {
  g_results.push_back({id, name, passed, detail, seconds});
  if (!passed) ++g_failures;
  std::printf("[%s] criterion %2d: %-38s %s (%.1fs)\n", passed ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

template <typename Fn>
void run_criterion(int id, const std::string& name, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  bool passed = false;
  std::string detail;
  try {
    std::tie(passed, detail) = fn();
  } catch (const std::exception& e) {
    passed = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  record(id, name, passed, detail, secs);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

int main() {
  const std::int64_t kBigX = 10'000'000;
  std::printf("building spf table to %lld and run constants...\n",
              static_cast<long long>(kBigX));
  std::fflush(stdout);
  const arith::SpfTable table(kBigX);
  const kfun::RunConstants consts = kfun::run_constants();
  const int workers = parallel::default_workers();

  // 1. exact identity suite
  run_criterion(1, "exact identity suite", [&] {
    for (const std::int64_t ell : arith::primes_up_to(10000)) {
      const auto s = configspace::p_split(ell, 1);
      if (s.p_a + s.p_b + s.p_c != 1) {
        return std::pair(false, "p_split sum != 1 at ell = " + std::to_string(ell));
      }
    }
    for (const double z : {2.0, 3.0, 5.0, 7.0, 11.0, 13.0}) {
      if (configspace::identity_sum(z, 1) != 1) {
        return std::pair(false, "identity_sum(z,1) != 1 at z = " + fmt(z));
      }
      if (z >= 2 && configspace::identity_sum_odd(z) != Rational(1, 3)) {
        return std::pair(false, "identity_sum_odd(z) != 1/3 at z = " + fmt(z));
      }
    }
    return std::pair(true, std::string("p_split sums, identity sums, odd restriction all exact"));
  });

  // 2. GL2 oracle
  run_criterion(2, "GL2 oracle", [&] {
    for (const std::int64_t ell : {2, 3, 5, 7}) {
      const auto dist = configspace::gl2_distribution(ell);
      const auto s = configspace::p_split(ell, 1);
      if (dist[0] != s.p_b || dist[1] != s.p_c) {
        return std::pair(false, "mismatch at ell = " + std::to_string(ell));
      }
      for (std::int64_t r = 2; r < ell; ++r) {
        if (dist[static_cast<std::size_t>(r)] != s.p_a / (ell - 2)) {
          return std::pair(false, "off-residue mismatch at ell = " + std::to_string(ell));
        }
      }
    }
    return std::pair(true, std::string("det+1-tr distribution matches exactly for ell in {2,3,5,7}"));
  });

  // 3. mu_2 reproduction
  run_criterion(3, "mu_2 reproduction", [&] {
    const auto mu = constants::moment_mu(2, 1'000'000);
    const auto ref = constants::mu2_reference(1'000'000);
    const double d_mu = std::abs(mu.value - 1.261605);
    const double d_ref = std::abs(ref.value - 1.261605);
    const double d_cross = std::abs(mu.value - ref.value);
    const bool ok = d_mu <= 5e-7 && d_ref <= 5e-7 && d_cross <= 1e-9;
    return std::pair(ok, "mu2 = " + fmt(mu.value) + ", |route diff| = " + fmt(d_cross));
  });

  // 4. means of the K family at x = 1e7, with the 1e4 -> 1e7 trend check
  std::vector<averages::PartialSumReport> mean_reports;
  run_criterion(4, "mean values at x = 1e7", [&] {
    using averages::Mode;
    std::string detail;
    bool ok = true;
    const struct {
      Mode mode;
      double abs_tol;   // absolute when > 0
      double rel_tol;   // relative to the reference when > 0
    } specs[] = {
        {Mode::kAll, 0.03, 0},      {Mode::kOdd, 0.03, 0},          {Mode::kPrimeKstar, 0, 0.01},
        {Mode::kPrimeK, 0, 0.01},   {Mode::kFShifted, 0, 0.01},
    };
    for (const auto& spec : specs) {
      const auto r = averages::partial_sums(spec.mode, kBigX, averages::kDefaultChunk, consts,
                                            table, workers);
      mean_reports.push_back(r);
      const double dev = std::abs(r.deviation);
      const double tol = spec.abs_tol > 0 ? spec.abs_tol : spec.rel_tol * r.reference;
      // trend: the deviation at 1e7 must not exceed the deviation at 1e4
      double dev4 = 0;
      for (const auto& d : r.decades) {
        if (d.x == 10000) dev4 = std::abs(d.mean - r.reference);
      }
      const bool mode_ok = dev <= tol && dev <= dev4;
      if (!mode_ok) ok = false;
      detail += averages::mode_name(spec.mode) + " dev=" + fmt(dev) + (mode_ok ? " ok; " : " FAIL; ");
    }
    return std::pair(ok, detail);
  });

  // informational only: the f-shifted mean against the constant (2/3) J,
  // the value the decomposition route and the prime-mean constant force
  {
    const auto& f = mean_reports.back();
    const double two_thirds_j = 2.0 / 3.0 * f.reference;
    const double dev = std::abs(f.mean - two_thirds_j);
    std::printf("[info] f-shifted mean %.6f vs (2/3)J = %.6f: |dev| = %.2g (%s at the same 1%%)\n",
                f.mean, two_thirds_j, dev, dev <= 0.01 * two_thirds_j ? "passes" : "fails");
  }

  // 5. distribution floor
  run_criterion(5, "distribution floor at x = 1e7", [&] {
    const double u0 = 2.0 / 3.0 * consts.c2;
    const auto mn = distribution::min_kstar(kBigX, consts, table, workers);
    const auto cdf = distribution::empirical_cdf(kBigX, 200, consts, table, workers);
    const std::int64_t mass = distribution::mass_below_u0(cdf);
    const bool ok = mn.value > u0 && mass == 0;
    return std::pair(ok, "min K* = " + fmt(mn.value) + " at N = " + std::to_string(mn.n_min) +
                             ", u0 = " + fmt(u0) + ", mass below = " + std::to_string(mass));
  });

  // 6. moment bracketing at x = 1e6
  run_criterion(6, "moment bracketing at x = 1e6", [&] {
    bool ok = true;
    std::string detail;
    double first_moment = 0;
    for (int k = 1; k <= 8; ++k) {
      const double emp = distribution::empirical_moment(1'000'000, k, consts, table,
                                                        averages::kDefaultChunk, workers);
      if (k == 1) first_moment = emp;
      const double schur = constants::moment_mu_prime(k, 1'000'000).value;
      if (emp > 1.05 * schur) {
        ok = false;
        detail += "k=" + std::to_string(k) + " exceeds Schur bound; ";
      }
    }
    if (std::abs(first_moment - 1.0) > 0.03) {
      ok = false;
      detail += "first moment off unity; ";
    }
    if (detail.empty()) {
      detail = "k = 1..8 below 1.05 * Schur, first moment = " + fmt(first_moment);
    }
    return std::pair(ok, detail);
  });

  // 7. decomposition and truncation consistency
  run_criterion(7, "decomposition vs truncation to 1e4", [&] {
    double worst = 0;
    for (std::int64_t n = 1; n <= 10000; ++n) {
      const double truncated =
          kfun::k_truncated(n, 1000, table) * kfun::r_truncated(n, 1000, table);
      const double exact = kfun::k_star_of(n, consts, table);
      worst = std::max(worst, std::abs(truncated - exact));
    }
    double worst_divisor = 0;
    for (std::int64_t n = 1; n <= 10000; ++n) {
      const auto f = table.factorize(n);
      // divisor walk carrying the multiplicative kernel g
      std::vector<std::pair<std::int64_t, double>> divisors{{1, 1.0}};
      for (const auto& pp : f) {
        const std::size_t base = divisors.size();
        const double p = static_cast<double>(pp.prime);
        const double gp = pp.prime == 2 ? -1.0 / 3.0 : 1.0 / ((p - 2.0) * (p + 1.0));
        for (std::size_t i = 0; i < base; ++i) {
          divisors.emplace_back(divisors[i].first * pp.prime, divisors[i].second * gp);
        }
        // higher powers contribute g = 0
      }
      double sum = 0;
      for (const auto& [d, g] : divisors) sum += g;
      worst_divisor = std::max(worst_divisor, std::abs(kfun::big_f(f) - sum));
    }
    const bool ok = worst <= 0.02 && worst_divisor <= 1e-12;
    return std::pair(ok, "max |K_z R_z - K*| = " + fmt(worst) +
                             ", max divisor-sum gap = " + fmt(worst_divisor));
  });

  // 8. elliptic-curve ground truth
  run_criterion(8, "elliptic-curve ground truth", [&] {
    // Hasse for |a|,|b| <= 20, good p <= 1000
    for (std::int64_t a = -20; a <= 20; ++a) {
      for (std::int64_t b = -20; b <= 20; ++b) {
        if (4 * a * a * a + 27 * b * b == 0) continue;
        const auto c = ecbox::CurveSpec{a, b, 4 * a * a * a + 27 * b * b};
        for (const std::int64_t p : arith::primes_up_to(1000)) {
          if (!ecbox::good_reduction(c, p)) continue;
          const std::int64_t d = ecbox::point_count(c, p) - (p + 1);
          if (d * d > 4 * p) {
            return std::pair(false, "Hasse violated at (" + std::to_string(a) + "," +
                                        std::to_string(b) + "), p = " + std::to_string(p));
          }
        }
      }
    }
    // character-sum count vs naive enumeration, |a|,|b| <= 5, good p <= 50
    for (std::int64_t a = -5; a <= 5; ++a) {
      for (std::int64_t b = -5; b <= 5; ++b) {
        if (4 * a * a * a + 27 * b * b == 0) continue;
        const auto c = ecbox::CurveSpec{a, b, 4 * a * a * a + 27 * b * b};
        for (const std::int64_t p : arith::primes_up_to(50)) {
          if (!ecbox::good_reduction(c, p)) continue;
          std::int64_t naive = 1;
          for (std::int64_t x = 0; x < p; ++x) {
            const std::int64_t fx =
                ((((x * x % p) * x % p) + a * x % p + b) % p + p) % p;
            for (std::int64_t y = 0; y < p; ++y) {
              if (y * y % p == fx) ++naive;
            }
          }
          if (ecbox::point_count(c, p) != naive) {
            return std::pair(false, "count mismatch at (" + std::to_string(a) + "," +
                                        std::to_string(b) + "), p = " + std::to_string(p));
          }
        }
      }
    }
    if (ecbox::m_e(ecbox::make_curve(0, 1), 6, table) != 1) {
      return std::pair(false, std::string("M_E((0,1), 6) != 1"));
    }
    const auto s = ecbox::sum_me(ecbox::make_curve(0, 1), 10000);
    if (std::abs(s.sum - s.pi_x) > 3 * 100 + 10) {
      return std::pair(false, "sum_me drifted: sum = " + std::to_string(s.sum) +
                                  ", pi = " + std::to_string(s.pi_x));
    }
    return std::pair(true, "Hasse, naive-count, M_E(6), and sum_me(1e4) all hold (|sum-pi| = " +
                               std::to_string(std::abs(s.sum - s.pi_x)) + ")");
  });

  // 9. curve-box diagnostic (non-fatal by design: majority in band); the
  // full report is archived next to the binary
  run_criterion(9, "curve-box diagnostic N in [30, 100]", [&] {
    std::FILE* archive = std::fopen("acceptance_box_report.csv", "w");
    if (archive) std::fprintf(archive, "N,A,B,curve_count,avg_me,prediction,ratio\n");
    int in_band = 0, total = 0;
    for (std::int64_t n = 30; n <= 100; ++n) {
      const auto r = ecbox::box_average(n, 50, 50, consts, table);
      ++total;
      if (archive) {
        std::fprintf(archive, "%lld,50,50,%lld,%.15g,%.15g,%.15g\n", static_cast<long long>(n),
                     static_cast<long long>(r.curve_count), r.avg_me, r.prediction, r.ratio);
      }
      if (r.ratio >= 0.5 && r.ratio <= 2.0) {
        ++in_band;
      } else {
        std::printf("[info]   box N=%lld outside band: ratio=%.3f (avg=%.4f, pred=%.4f)\n",
                    static_cast<long long>(n), r.ratio, r.avg_me, r.prediction);
      }
    }
    if (archive) std::fclose(archive);
    const bool ok = in_band * 10 >= total * 6;  // at least 60%
    return std::pair(ok, std::to_string(in_band) + "/" + std::to_string(total) +
                             " within [0.5, 2.0], archived to acceptance_box_report.csv");
  });

  // 10. determinism across worker counts
  run_criterion(10, "worker-count determinism", [&] {
    using averages::Mode;
    for (const Mode mode : {Mode::kAll, Mode::kOdd, Mode::kPrimeKstar, Mode::kPrimeK,
                            Mode::kFShifted}) {
      const auto one = averages::partial_sums(mode, kBigX, averages::kDefaultChunk, consts,
                                              table, 1);
      const auto eight = averages::partial_sums(mode, kBigX, averages::kDefaultChunk, consts,
                                                table, 8);
      if (one.sum != eight.sum) {
        return std::pair(false, "avg sum differs for mode " + averages::mode_name(mode));
      }
    }
    for (int k = 1; k <= 8; ++k) {
      const double one = distribution::empirical_moment(1'000'000, k, consts, table,
                                                        averages::kDefaultChunk, 1);
      const double eight = distribution::empirical_moment(1'000'000, k, consts, table,
                                                          averages::kDefaultChunk, 8);
      if (one != eight) {
        return std::pair(false, "moment k = " + std::to_string(k) + " differs");
      }
    }
    return std::pair(true, std::string("bit-identical sums with 1 and 8 workers"));
  });

  std::printf("\n%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - g_failures,
              g_results.size());
  if (g_failures > 0) {
    std::printf("failing criteria:");
    for (const auto& c : g_results) {
      if (!c.passed) std::printf(" %d", c.id);
    }
    std::printf("\n");
  }
  return g_failures == 0 ? 0 : 1;
}
