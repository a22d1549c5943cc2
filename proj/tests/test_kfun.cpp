#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kstarlab/arith.hpp"
#include "kstarlab/kfun.hpp"

using namespace kstarlab;
using doctest::Approx;

namespace {

const arith::SpfTable& table() {
  static const arith::SpfTable t(1000001);
  return t;
}

const kfun::RunConstants& consts() {
  static const kfun::RunConstants c = kfun::run_constants();
  return c;
}

// independent truncated-product oracle for C2, own sieve
double c2_oracle(std::int64_t limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  double value = 1.0;
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t m = p * p; m <= limit; m += p) composite[static_cast<std::size_t>(m)] = true;
    if (p > 2) {
      const double q = static_cast<double>(p - 1);
      value *= 1.0 - 1.0 / (q * q);
    }
  }
  return value;
}

// sum of aux_g over the divisors of n, walking the divisor lattice
double divisor_sum_of_g(std::int64_t n) {
  const auto f = table().factorize(n);
  std::vector<std::int64_t> divisors{1};
  for (const auto& pp : f) {
    const std::size_t base = divisors.size();
    std::int64_t pe = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      pe *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pe);
    }
  }
  double sum = 0.0;
  for (const std::int64_t d : divisors) sum += kfun::aux_g(table().factorize(d));
  return sum;
}

}  // namespace

TEST_CASE("F hand values") {
  CHECK(kfun::big_f(arith::factorize(1)) == 1.0);
  CHECK(kfun::big_f(arith::factorize(2)) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(kfun::big_f(arith::factorize(4)) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(kfun::big_f(arith::factorize(3)) == Approx(5.0 / 4.0).epsilon(1e-15));
}

TEST_CASE("G hand values") {
  CHECK(kfun::big_g(arith::factorize(1)) == 1.0);
  CHECK(kfun::big_g(arith::factorize(2)) == Approx(0.5).epsilon(1e-15));
  CHECK(kfun::big_g(arith::factorize(4)) == Approx(0.75).epsilon(1e-15));
  CHECK(kfun::big_g(arith::factorize(3)) == Approx(10.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("R hand values") {
  CHECK(kfun::r_ratio(arith::factorize(1)) == 1.0);
  CHECK(kfun::r_ratio(arith::factorize(2)) == Approx(2.0).epsilon(1e-15));
  CHECK(kfun::r_ratio(arith::factorize(6)) == Approx(3.0).epsilon(1e-15));
}

TEST_CASE("F depends only on the radical") {
  for (std::int64_t n = 2; n <= 10000; ++n) {
    const auto f = table().factorize(n);
    std::int64_t radical = 1;
    for (const auto& pp : f) radical *= pp.prime;
    CHECK(kfun::big_f(f) == kfun::big_f(table().factorize(radical)));
  }
}

TEST_CASE("K(2), K*(2), K*(3) against the truncated-product oracle") {
  const double c2_ref = c2_oracle(1000000);
  const auto v2 = kfun::k_exact(2, consts(), table());
  CHECK(v2.k == Approx(c2_ref / 2.0).epsilon(1e-6));
  CHECK(v2.k_star == Approx(c2_ref).epsilon(1e-6));
  CHECK(v2.k_star == Approx(0.6601618).epsilon(1e-6));

  const auto v3 = kfun::k_exact(3, consts(), table());
  CHECK(v3.k_star == Approx(10.0 / 9.0 * consts().c2).epsilon(1e-14));
  CHECK(v3.k_star == Approx(0.733513).epsilon(1e-5));
}

TEST_CASE("K(1) comes from the dedicated Euler product") {
  const auto v1 = kfun::k_exact(1, consts(), table());
  CHECK(v1.k == v1.k_star);
  CHECK(v1.k == consts().k_at_1);
  CHECK(v1.k == Approx(0.615132657).epsilon(1e-8));
}

TEST_CASE("k_exact rejects n = 0") {
  CHECK_THROWS_AS(kfun::k_exact(0, consts(), table()), std::domain_error);
}

TEST_CASE("KValue invariants on a sample range") {
  for (std::int64_t n = 1; n <= 3000; ++n) {
    const auto v = kfun::k_exact(n, consts(), table());
    CHECK(v.k > 0.0);
    CHECK(v.k <= 1.0);
    const double r = kfun::r_ratio(table().factorize(std::max<std::int64_t>(n, 1)));
    CHECK(v.k_star == Approx(v.k * r).epsilon(1e-15));
  }
}

TEST_CASE("K_z hand values and empty product") {
  // z = 2, n = 3: only p = 2 contributes, with the Kronecker square vanishing
  CHECK(kfun::k_truncated(3, 2, table()) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(kfun::k_truncated(3, 1.5, table()) == 1.0);
  CHECK(kfun::k_truncated(7, 0, table()) == 1.0);
}

TEST_CASE("K_z approaches K as z grows") {
  const double kz = kfun::k_truncated(2, 100000, table());
  const double k = kfun::k_exact(2, consts(), table()).k;
  CHECK(kz == Approx(k).epsilon(1e-4));
}

TEST_CASE("R_z hand values") {
  CHECK(kfun::r_truncated(3, 2, table()) == 1.0);
  CHECK(kfun::r_truncated(6, 2, table()) == Approx(2.0).epsilon(1e-15));
  CHECK(kfun::r_truncated(6, 5, table()) == Approx(kfun::r_ratio(arith::factorize(6))).epsilon(1e-15));
}

TEST_CASE("sandwich: K <= K_z <= 1 and 1 <= R_z <= R") {
  for (const double z : {10.0, 100.0, 1000.0}) {
    for (std::int64_t n = 1; n <= 10000; ++n) {
      const double kz = kfun::k_truncated(n, z, table());
      const double rz = kfun::r_truncated(n, z, table());
      const auto v = kfun::k_exact(n, consts(), table());
      const double r = n == 1 ? 1.0 : kfun::r_ratio(table().factorize(n));
      CHECK(kz <= 1.0 + 1e-12);
      CHECK(v.k <= kz * (1.0 + 1e-12));
      CHECK(rz >= 1.0 - 1e-12);
      CHECK(rz <= r * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("decomposition path matches the truncated direct form to 0.02") {
  for (std::int64_t n = 1; n <= 10000; ++n) {
    const double truncated =
        kfun::k_truncated(n, 1000, table()) * kfun::r_truncated(n, 1000, table());
    const double exact = kfun::k_exact(n, consts(), table()).k_star;
    CHECK(std::abs(truncated - exact) <= 0.02);
  }
}

TEST_CASE("K* stays above the floor u0 up to 1e6") {
  const double u0 = 2.0 / 3.0 * consts().c2;
  double min_seen = 10.0;
  for (std::int64_t n = 1; n <= 1000000; ++n) {
    min_seen = std::min(min_seen, kfun::k_star_of(n, consts(), table()));
  }
  CHECK(min_seen > u0);
}

TEST_CASE("aux_g hand values") {
  CHECK(kfun::aux_g(arith::factorize(1)) == 1.0);
  CHECK(kfun::aux_g(arith::factorize(4)) == 0.0);
  CHECK(kfun::aux_g(arith::factorize(6)) == Approx(-1.0 / 12.0).epsilon(1e-15));
  CHECK(kfun::aux_g(arith::factorize(2)) == Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(kfun::aux_g(arith::factorize(3)) == Approx(0.25).epsilon(1e-15));
}

TEST_CASE("divisor-sum identity F(n) = sum_{d|n} g(d) to 1e-12") {
  for (std::int64_t n = 1; n <= 10000; ++n) {
    CHECK(std::abs(kfun::big_f(table().factorize(n)) - divisor_sum_of_g(n)) <= 1e-12);
  }
}

TEST_CASE("K° equals K* at primes (all exponents odd)") {
  for (std::int64_t p = 2; p <= 1000; ++p) {
    if (!table().is_prime(p)) continue;
    CHECK(kfun::k_circ(p, consts(), table()) ==
          Approx(kfun::k_star_of(p, consts(), table())).epsilon(1e-14));
  }
}

TEST_CASE("K° equals K* on squarefree n to 1e-12") {
  for (std::int64_t n = 2; n <= 10000; ++n) {
    const auto f = table().factorize(n);
    bool squarefree = true;
    for (const auto& pp : f) squarefree = squarefree && pp.exponent == 1;
    if (!squarefree) continue;
    CHECK(std::abs(kfun::k_circ(n, consts(), table()) - kfun::k_star_of(n, consts(), table())) <=
          1e-12);
  }
}

TEST_CASE("K° hand values at 4 and 9") {
  // v_2(4) = 2 even, N_2 = 1, chi(-1, 2) = +1: factor 1 - 1/8 = 7/8
  const double expected4 =
      2.0 * consts().c2 * kfun::big_f(table().factorize(3)) * (7.0 / 8.0);
  CHECK(kfun::k_circ(4, consts(), table()) == Approx(expected4).epsilon(1e-14));

  // v_3(9) = 2 even, N_3 = 1, chi(-1, 3) = -1: factor 1 - 4/54 = 25/27
  const double expected9 = 1.5 * consts().c2 * kfun::big_f(table().factorize(8)) * (4.0 / 3.0) *
                           (25.0 / 27.0);
  CHECK(kfun::k_circ(9, consts(), table()) == Approx(expected9).epsilon(1e-14));
}

TEST_CASE("K° rejects n <= 1") {
  CHECK_THROWS_AS(kfun::k_circ(1, consts(), table()), std::domain_error);
  CHECK_THROWS_AS(kfun::k_circ(0, consts(), table()), std::domain_error);
}
