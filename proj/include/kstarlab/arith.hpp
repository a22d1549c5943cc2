// Integer primitives shared by every other module: smallest-prime-factor
// sieving, factorization, the Kronecker symbol, and Euler's phi.
//
// All arithmetic is exact signed 64-bit; inputs are validated against
// kMaxInput = 2^62, far above the desk scale this project runs at.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace kstarlab::arith {

inline constexpr std::int64_t kMaxInput = std::int64_t{1} << 62;

// Any n <= 2^62 has at most 15 distinct prime factors: the product of the
// first 16 primes already exceeds 2^62.
inline constexpr int kMaxDistinctPrimes = 15;

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical prime-power decomposition of n >= 1, primes strictly increasing.
// Fixed capacity so batch loops stay allocation-free.
class Factorization {
 public:
  std::int64_t n() const { return n_; }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const PrimePower* begin() const { return parts_.data(); }
  const PrimePower* end() const { return parts_.data() + count_; }
  const PrimePower& operator[](int i) const { return parts_[i]; }

  // exponent of p in n, 0 if p does not divide n
  int exponent_of(std::int64_t p) const;

 private:
  friend Factorization factorize(std::int64_t n);
  friend class SpfTable;

  void push(std::int64_t prime, int exponent) {
    parts_[count_++] = PrimePower{prime, exponent};
  }

  std::int64_t n_ = 1;
  int count_ = 0;
  std::array<PrimePower, kMaxDistinctPrimes> parts_{};
};

// Smallest-prime-factor table for [2, limit].
//
// Invariants: spf(n) is the least prime dividing n, and spf(n) == n exactly
// when n is prime.  Immutable after construction, safe to share across
// worker threads.
class SpfTable {
 public:
  explicit SpfTable(std::int64_t limit);

  std::int64_t limit() const { return limit_; }

  std::uint32_t spf(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }

  bool is_prime(std::int64_t n) const {
    return n >= 2 && spf_[static_cast<std::size_t>(n)] == static_cast<std::uint64_t>(n);
  }

  // O(log n) divisions; requires 1 <= n <= limit()
  Factorization factorize(std::int64_t n) const;

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> spf_;
};

SpfTable build_spf(std::int64_t limit);

// Trial division up to sqrt(n); no table required.
Factorization factorize(std::int64_t n);
Factorization factorize(std::int64_t n, const SpfTable& table);

// Kronecker symbol (a|b), the total extension of the Jacobi/Legendre symbol:
// (a|2) is 0 for even a and +-1 by a mod 8; (a|-1) = sign-dependent;
// (a|0) = 1 iff |a| = 1.  Agrees with the Legendre symbol for odd prime b,
// and is completely multiplicative in both arguments.  Never throws.
int kronecker(std::int64_t a, std::int64_t b) noexcept;

// phi(n) = n * prod_{p|n} (1 - 1/p), exact in integers
std::int64_t euler_phi(const Factorization& f);

namespace detail {
// Odd-only Eratosthenes bitmap covering [3, limit], used by the streaming
// helpers below.  bit(i) set <=> 2i+3 is composite.
std::vector<std::uint64_t> composite_bitmap(std::int64_t limit);
}  // namespace detail

// Streams the primes 2, 3, 5, ... <= limit in increasing order.  The bitmap
// costs limit/16 bytes, an order of magnitude less than an SpfTable.
template <typename Fn>
void for_primes_up_to(std::int64_t limit, Fn&& fn) {
  if (limit < 2) return;
  fn(std::int64_t{2});
  if (limit < 3) return;
  const auto composite = detail::composite_bitmap(limit);
  const std::int64_t n_odd = (limit - 1) / 2;  // count of odd numbers in [3, limit]
  for (std::int64_t i = 0; i < n_odd; ++i) {
    if (!(composite[static_cast<std::size_t>(i >> 6)] >> (i & 63) & 1u)) {
      fn(2 * i + 3);
    }
  }
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit);

// floor(sqrt(n)) computed exactly
std::int64_t isqrt(std::int64_t n);

}  // namespace kstarlab::arith
