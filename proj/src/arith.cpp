#include "kstarlab/arith.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kstarlab::arith {

int Factorization::exponent_of(std::int64_t p) const {
  for (const auto& pp : *this) {
    if (pp.prime == p) return pp.exponent;
    if (pp.prime > p) break;
  }
  return 0;
}

SpfTable::SpfTable(std::int64_t limit) : limit_(limit) {
  if (limit < 2) throw std::domain_error("SpfTable: limit must be >= 2");
  if (limit > std::int64_t{0xFFFFFFFF}) {
    throw std::length_error("SpfTable: limit exceeds the 32-bit value range");
  }
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf_[static_cast<std::size_t>(i)] != 0) continue;
    // i is prime; mark it and every multiple whose least factor is i
    spf_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
    if (i <= limit / i) {
      for (std::int64_t m = i * i; m <= limit; m += i) {
        if (spf_[static_cast<std::size_t>(m)] == 0) {
          spf_[static_cast<std::size_t>(m)] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }
}

SpfTable build_spf(std::int64_t limit) { return SpfTable(limit); }

Factorization SpfTable::factorize(std::int64_t n) const {
  if (n < 1) throw std::domain_error("factorize: n must be positive");
  if (n > limit_) {
    throw std::domain_error("factorize: n = " + std::to_string(n) +
                            " exceeds the sieve limit " + std::to_string(limit_));
  }
  Factorization f;
  f.n_ = n;
  while (n > 1) {
    const std::int64_t p = spf_[static_cast<std::size_t>(n)];
    int e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    f.push(p, e);
  }
  return f;
}

Factorization factorize(std::int64_t n, const SpfTable& table) { return table.factorize(n); }

Factorization factorize(std::int64_t n) {
  if (n < 1) throw std::domain_error("factorize: n must be positive");
  if (n > kMaxInput) throw std::domain_error("factorize: n exceeds 2^62");
  Factorization f;
  f.n_ = n;
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    f.push(p, e);
  }
  if (n > 1) f.push(n, 1);
  return f;
}

int kronecker(std::int64_t a, std::int64_t b) noexcept {
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (b & 1) == 0) return 0;
  int result = 1;
  // factor out powers of two from b; each contributes (a|2), +-1 by a mod 8
  int two_count = 0;
  while ((b & 1) == 0) {
    b /= 2;
    ++two_count;
  }
  if (two_count & 1) {
    const int a_mod8 = static_cast<int>(((a % 8) + 8) % 8);  // a is odd here
    if (a_mod8 == 3 || a_mod8 == 5) result = -result;
  }
  if (b < 0) {
    b = -b;
    if (a < 0) result = -result;
  }
  // b is now odd and positive: Jacobi loop with quadratic reciprocity
  a = ((a % b) + b) % b;
  while (a != 0) {
    two_count = 0;
    while ((a & 1) == 0) {
      a /= 2;
      ++two_count;
    }
    if (two_count & 1) {
      const int b_mod8 = static_cast<int>(b % 8);
      if (b_mod8 == 3 || b_mod8 == 5) result = -result;
    }
    if ((a % 4 == 3) && (b % 4 == 3)) result = -result;
    const std::int64_t t = b % a;
    b = a;
    a = t;
  }
  return (b == 1) ? result : 0;
}

std::int64_t euler_phi(const Factorization& f) {
  std::int64_t phi = 1;
  for (const auto& pp : f) {
    phi *= pp.prime - 1;
    for (int i = 1; i < pp.exponent; ++i) phi *= pp.prime;
  }
  return phi;
}

namespace detail {

std::vector<std::uint64_t> composite_bitmap(std::int64_t limit) {
  const std::int64_t n_odd = limit >= 3 ? (limit - 1) / 2 : 0;  // odd values 2i+3
  std::vector<std::uint64_t> bits(static_cast<std::size_t>((n_odd + 63) / 64), 0);
  for (std::int64_t p = 3; p * p <= limit; p += 2) {
    const std::int64_t ip = (p - 3) / 2;
    if (bits[static_cast<std::size_t>(ip >> 6)] >> (ip & 63) & 1u) continue;
    for (std::int64_t m = p * p; m <= limit; m += 2 * p) {
      const std::int64_t i = (m - 3) / 2;
      bits[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
    }
  }
  return bits;
}

}  // namespace detail

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit >= 2) {
    primes.reserve(static_cast<std::size_t>(
        limit < 17 ? 8 : static_cast<double>(limit) / (std::log(static_cast<double>(limit)) - 1.2)));
  }
  for_primes_up_to(limit, [&](std::int64_t p) { primes.push_back(p); });
  return primes;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace kstarlab::arith
