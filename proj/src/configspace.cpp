#include "kstarlab/configspace.hpp"

#include <stdexcept>
#include <string>

namespace kstarlab::configspace {

namespace {

std::vector<std::int64_t> primes_up_to_z(double z) {
  if (z < 2) return {};
  return arith::primes_up_to(static_cast<std::int64_t>(z));
}

void require_enumerable(double z) {
  if (z > kMaxEnumerationZ) {
    throw std::length_error("configuration enumeration is capped at z = 13 (3^pi(z) blowup)");
  }
}

BigInt binomial(int n, int k) {
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace

Configuration sigma_of(std::int64_t n, double z, const arith::SpfTable& table) {
  if (n < 2) throw std::domain_error("sigma_of: n must be >= 2");
  Configuration sigma;
  sigma.z = z;
  for (const std::int64_t ell : primes_up_to_z(z)) {
    if (n % ell == 0) {
      int e = 0;
      for (std::int64_t m = n; m % ell == 0; m /= ell) ++e;
      sigma.set_b.push_back(ell);
      sigma.exponents.push_back(e);
    } else if ((n - 1) % ell == 0) {
      sigma.set_c.push_back(ell);
    } else {
      sigma.set_a.push_back(ell);
    }
  }
  (void)table;
  return sigma;
}

Rational d_sigma(const Configuration& sigma) {
  Rational d(1);
  for (const std::int64_t ell : sigma.set_a) {
    d *= Rational(ell - 2, ell);
  }
  for (std::size_t i = 0; i < sigma.set_b.size(); ++i) {
    const std::int64_t ell = sigma.set_b[i];
    d *= Rational(ell - 1, ell) / rational_pow(Rational(ell), sigma.exponents[i]);
  }
  for (const std::int64_t ell : sigma.set_c) {
    d *= Rational(1, ell);
  }
  return d;
}

std::int64_t m_sigma(const Configuration& sigma) {
  auto checked_mul = [](std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r) || r > arith::kMaxInput) {
      throw std::overflow_error("m_sigma exceeds 2^62; lower z or the exponent bounds");
    }
    return r;
  };
  std::int64_t m = 1;
  for (const std::int64_t ell : sigma.set_a) m = checked_mul(m, ell);
  for (const std::int64_t ell : sigma.set_c) m = checked_mul(m, ell);
  for (std::size_t i = 0; i < sigma.set_b.size(); ++i) {
    for (int j = 0; j <= sigma.exponents[i]; ++j) m = checked_mul(m, sigma.set_b[i]);
  }
  return m;
}

Rational kzrz_of_sigma(const Configuration& sigma) {
  Rational v(1);
  for (const std::int64_t ell : sigma.set_a) {
    v *= Rational(1) - Rational(1, (ell - 1) * (ell - 1));
  }
  for (std::size_t i = 0; i < sigma.set_b.size(); ++i) {
    const std::int64_t ell = sigma.set_b[i];
    const Rational pe = rational_pow(Rational(ell), sigma.exponents[i]);
    v *= (Rational(1) - Rational(1) / (pe * (ell - 1))) / (Rational(1) - Rational(1, ell));
  }
  for (const std::int64_t ell : sigma.set_c) {
    v *= Rational(1) - Rational(1, (ell - 1) * (ell - 1) * (ell + 1));
  }
  return v;
}

PSplit p_split(std::int64_t ell, int k) {
  if (k < 1) throw std::domain_error("p_split: k must be >= 1");
  PSplit s;
  // P_A = (1 - 2/ell)^{k+1} (1 - 1/ell)^{-2k}
  s.p_a = rational_pow(Rational(ell - 2, ell), k + 1) * rational_pow(Rational(ell - 1, ell), -2 * k);
  // P_B = (1 - 1/ell)^{1-k} sum_j C(k,j)(-1)^j (ell-1)^{-j} / (ell^{j+1} - 1)
  Rational sum(0);
  BigInt ell_pow = ell;  // ell^{j+1}
  BigInt em1_pow = 1;    // (ell-1)^j
  for (int j = 0; j <= k; ++j) {
    const BigInt coeff = binomial(k, j);
    const Rational term = Rational(coeff, em1_pow * (ell_pow - 1));
    sum += (j & 1) ? -term : term;
    ell_pow *= ell;
    em1_pow *= ell - 1;
  }
  s.p_b = rational_pow(Rational(ell - 1, ell), 1 - k) * sum;
  // P_C = (1/ell)(1 - 1/((ell-1)^2 (ell+1)))^k
  s.p_c = Rational(1, ell) * rational_pow(Rational(1) - Rational(1, (ell - 1) * (ell - 1) * (ell + 1)), k);
  return s;
}

Rational p_b_truncated(std::int64_t ell, int k, int e_max) {
  if (k < 1) throw std::domain_error("p_b_truncated: k must be >= 1");
  if (e_max < 1 || e_max > kMaxExponentBound) {
    throw std::length_error("p_b_truncated: e_max out of [1, 16]");
  }
  // sum_{e=1}^{e_max} ell^{-e} (1 - 1/ell)^{1-k} (1 - 1/(ell^e (ell-1)))^k
  const Rational prefactor = rational_pow(Rational(ell - 1, ell), 1 - k);
  Rational sum(0);
  Rational pe(1);
  for (int e = 1; e <= e_max; ++e) {
    pe *= ell;
    sum += rational_pow(Rational(1) - Rational(1) / (pe * (ell - 1)), k) / pe;
  }
  return prefactor * sum;
}

Rational identity_sum_restricted(double z, int k, TwoCell two_cell, std::optional<int> e_max) {
  require_enumerable(z);
  if (k < 1) throw std::domain_error("identity_sum: k must be >= 1");
  const auto primes = primes_up_to_z(z);

  // per-prime weights for the three cells
  std::vector<PSplit> weights;
  weights.reserve(primes.size());
  for (const std::int64_t ell : primes) {
    PSplit w = p_split(ell, k);
    if (e_max.has_value()) w.p_b = p_b_truncated(ell, k, *e_max);
    weights.push_back(std::move(w));
  }

  // walk all 3^pi(z) assignments; cell order (A, B, C) is the canonical
  // enumeration order
  Rational total(0);
  const std::size_t n = primes.size();
  std::vector<int> cell(n, 0);
  while (true) {
    bool admissible = true;
    if (two_cell != TwoCell::kAny && n > 0 && primes[0] == 2) {
      admissible = (two_cell == TwoCell::kB) ? (cell[0] == 1) : (cell[0] == 2);
    }
    if (admissible) {
      Rational term(1);
      for (std::size_t i = 0; i < n; ++i) {
        switch (cell[i]) {
          case 0: term *= weights[i].p_a; break;
          case 1: term *= weights[i].p_b; break;
          default: term *= weights[i].p_c; break;
        }
      }
      total += term;
    }
    // odometer increment
    std::size_t i = 0;
    while (i < n && cell[i] == 2) cell[i++] = 0;
    if (i == n) break;
    ++cell[i];
  }
  return total;
}

Rational identity_sum(double z, int k, std::optional<int> e_max) {
  return identity_sum_restricted(z, k, TwoCell::kAny, e_max);
}

Rational identity_sum_odd(double z) {
  if (z < 2) throw std::domain_error("identity_sum_odd: z must be >= 2");
  return identity_sum_restricted(z, 1, TwoCell::kC);
}

DensityCheck density_check(const Configuration& sigma, std::int64_t x,
                           const arith::SpfTable& table) {
  if (x > table.limit()) throw std::domain_error("density_check: x exceeds the sieve limit");
  const auto primes = primes_up_to_z(sigma.z);

  // classify n against sigma without materializing a Configuration per n
  auto matches = [&](std::int64_t n) {
    std::size_t ia = 0, ib = 0, ic = 0;
    for (const std::int64_t ell : primes) {
      if (n % ell == 0) {
        if (ib >= sigma.set_b.size() || sigma.set_b[ib] != ell) return false;
        int e = 0;
        for (std::int64_t m = n; m % ell == 0; m /= ell) ++e;
        if (sigma.exponents[ib] != e) return false;
        ++ib;
      } else if ((n - 1) % ell == 0) {
        if (ic >= sigma.set_c.size() || sigma.set_c[ic] != ell) return false;
        ++ic;
      } else {
        if (ia >= sigma.set_a.size() || sigma.set_a[ia] != ell) return false;
        ++ia;
      }
    }
    return ia == sigma.set_a.size() && ib == sigma.set_b.size() && ic == sigma.set_c.size();
  };

  DensityCheck result;
  for (std::int64_t n = 2; n <= x; ++n) {
    if (matches(n)) ++result.count;
  }
  result.expected = to_double(d_sigma(sigma)) * static_cast<double>(x);
  return result;
}

std::vector<Rational> gl2_distribution(std::int64_t ell) {
  if (ell > kMaxGl2Prime) {
    throw std::length_error("gl2_distribution: |GL2(F_ell)| grows as ell^4; capped at ell = 13");
  }
  if (ell < 2) throw std::domain_error("gl2_distribution: ell must be prime");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(ell), 0);
  std::int64_t order = 0;
  for (std::int64_t a = 0; a < ell; ++a) {
    for (std::int64_t b = 0; b < ell; ++b) {
      for (std::int64_t c = 0; c < ell; ++c) {
        for (std::int64_t d = 0; d < ell; ++d) {
          const std::int64_t det = ((a * d - b * c) % ell + ell) % ell;
          if (det == 0) continue;
          ++order;
          const std::int64_t r = ((det + 1 - (a + d)) % ell + ell) % ell;
          ++counts[static_cast<std::size_t>(r)];
        }
      }
    }
  }
  std::vector<Rational> dist;
  dist.reserve(counts.size());
  for (const std::int64_t c : counts) dist.emplace_back(c, order);
  return dist;
}

}  // namespace kstarlab::configspace
