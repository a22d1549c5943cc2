#include "kstarlab/kfun.hpp"

#include <cmath>
#include <stdexcept>

namespace kstarlab::kfun {

namespace {

// (1 - 1/(p-1)^2)^{-1} for p > 2, the shared head factor of F and G
inline double inv_head(std::int64_t p) {
  const double q = static_cast<double>(p - 1);
  return 1.0 / (1.0 - 1.0 / (q * q));
}

}  // namespace

RunConstants run_constants(std::int64_t truncation_prime) {
  const auto c2 = constants::named_constant(constants::ConstantId::kC2, truncation_prime);
  const auto k1 = constants::named_constant(constants::ConstantId::kKAt1, truncation_prime);
  return RunConstants{c2.value, k1.value, truncation_prime, c2.tail_bound};
}

double big_f(const arith::Factorization& f) {
  double value = 1.0;
  for (const auto& pp : f) {
    const double p = static_cast<double>(pp.prime);
    if (pp.prime > 2) value *= inv_head(pp.prime);
    value *= 1.0 - 1.0 / ((p - 1.0) * (p - 1.0) * (p + 1.0));
  }
  return value;
}

double big_g(const arith::Factorization& f) {
  double value = 1.0;
  for (const auto& pp : f) {
    const double p = static_cast<double>(pp.prime);
    if (pp.prime > 2) value *= inv_head(pp.prime);
    double pa = p;
    for (int i = 1; i < pp.exponent; ++i) pa *= p;
    value *= 1.0 - 1.0 / (pa * (p - 1.0));
  }
  return value;
}

double r_ratio(const arith::Factorization& f) {
  double value = 1.0;
  for (const auto& pp : f) {
    value *= 1.0 / (1.0 - 1.0 / static_cast<double>(pp.prime));
  }
  return value;
}

double aux_g(const arith::Factorization& f) {
  double value = 1.0;
  for (const auto& pp : f) {
    if (pp.exponent > 1) return 0.0;  // supported on squarefree d only
    if (pp.prime == 2) {
      value *= -1.0 / 3.0;
    } else {
      const double p = static_cast<double>(pp.prime);
      value *= 1.0 / ((p - 2.0) * (p + 1.0));
    }
  }
  return value;
}

KParts k_parts(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table) {
  if (n < 1) throw std::domain_error("k_parts: n must be positive");
  if (n == 1) return KParts{consts.k_at_1, consts.k_at_1, 1.0};
  const arith::Factorization fn = table.factorize(n);
  const double k = consts.c2 * big_f(table.factorize(n - 1)) * big_g(fn);
  const double r = r_ratio(fn);
  return KParts{k, k * r, r};
}

KValue k_exact(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table) {
  const KParts parts = k_parts(n, consts, table);
  return KValue{n, parts.k, parts.k_star, KMethod::kDecomposition, std::nullopt};
}

double k_of(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table) {
  return k_parts(n, consts, table).k;
}

double k_star_of(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table) {
  return k_parts(n, consts, table).k_star;
}

double k_truncated(std::int64_t n, double z, const arith::SpfTable& table) {
  if (n < 1) throw std::domain_error("k_truncated: n must be positive");
  if (n > table.limit()) throw std::domain_error("k_truncated: n exceeds the sieve limit");
  const arith::Factorization fn = table.factorize(n);
  double value = 1.0;
  if (z >= 2) {
    for (const std::int64_t p : arith::primes_up_to(static_cast<std::int64_t>(z))) {
      const double pd = static_cast<double>(p);
      const int e = fn.exponent_of(p);
      if (e > 0) {
        double pa = pd;
        for (int i = 1; i < e; ++i) pa *= pd;
        value *= 1.0 - 1.0 / (pa * (pd - 1.0));
      } else {
        const int chi = arith::kronecker(n - 1, p);
        value *= 1.0 - (static_cast<double>(chi * chi) * pd + 1.0) /
                           ((pd - 1.0) * (pd - 1.0) * (pd + 1.0));
      }
    }
  }
  return value;
}

double r_truncated(std::int64_t n, double z, const arith::SpfTable& table) {
  if (n < 1) throw std::domain_error("r_truncated: n must be positive");
  if (n > table.limit()) throw std::domain_error("r_truncated: n exceeds the sieve limit");
  double value = 1.0;
  for (const auto& pp : table.factorize(n)) {
    if (static_cast<double>(pp.prime) <= z) {
      value *= 1.0 / (1.0 - 1.0 / static_cast<double>(pp.prime));
    }
  }
  return value;
}

double k_circ(std::int64_t n, const RunConstants& consts, const arith::SpfTable& table) {
  if (n < 2) throw std::domain_error("k_circ: n must be >= 2");
  const arith::Factorization fn = table.factorize(n);
  double g_circ = 1.0;
  for (const auto& pp : fn) {
    const double p = static_cast<double>(pp.prime);
    if (pp.prime > 2) g_circ *= inv_head(pp.prime);
    double pa = p;
    for (int i = 1; i < pp.exponent; ++i) pa *= p;
    if (pp.exponent % 2 == 1) {
      g_circ *= 1.0 - 1.0 / (pa * (p - 1.0));
    } else {
      // N_p = n / p^{v_p(n)}, the p-free part
      std::int64_t n_p = n;
      for (int i = 0; i < pp.exponent; ++i) n_p /= pp.prime;
      const int chi = arith::kronecker(-n_p, pp.prime);
      g_circ *= 1.0 - (p - static_cast<double>(chi)) / (pa * p * (p - 1.0));
    }
  }
  return r_ratio(fn) * consts.c2 * big_f(table.factorize(n - 1)) * g_circ;
}

}  // namespace kstarlab::kfun
