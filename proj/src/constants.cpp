#include "kstarlab/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kstarlab/arith.hpp"
#include "kstarlab/configspace.hpp"

namespace kstarlab::constants {

namespace {

// exact rationals below this, binary64 closed form above; see header notes
constexpr std::int64_t kExactFactorLimit = 128;

// moment products never truncate below this so the derived tail constants
// (valid for ell >= 3k, k <= 64) always cover the omitted range
constexpr std::int64_t kMinMomentTruncation = 257;

void require_truncation(std::int64_t p) {
  if (p < 100) throw std::domain_error("truncation prime must be >= 100");
}

// P_A + P_B + P_C at exponent k in binary64; only safe when the alternating
// binomial sum is first-term dominant, i.e. k << ell^2
double moment_factor_f64(int k, std::int64_t ell) {
  const double l = static_cast<double>(ell);
  const double p_a = std::pow(1.0 - 2.0 / l, k + 1) * std::pow(1.0 - 1.0 / l, -2.0 * k);
  double sum = 0.0;
  double coeff = 1.0;     // C(k, j)
  double pow_l = l;       // l^{j+1}
  double pow_lm1 = 1.0;   // (l-1)^j
  for (int j = 0; j <= k; ++j) {
    const double term = coeff / (pow_lm1 * (pow_l - 1.0));
    sum += (j & 1) ? -term : term;
    if (term < 1e-19 * sum) break;  // terms decrease monotonically for ell >= 128
    coeff = coeff * static_cast<double>(k - j) / static_cast<double>(j + 1);
    pow_l *= l;
    pow_lm1 *= l - 1.0;
  }
  const double p_b = std::pow(1.0 - 1.0 / l, 1.0 - k) * sum;
  const double base_c = 1.0 - 1.0 / ((l - 1.0) * (l - 1.0) * (l + 1.0));
  const double p_c = std::pow(base_c, k) / l;
  return p_a + p_b + p_c;
}

}  // namespace

std::string FactorId::name() const {
  switch (kind) {
    case FactorKind::kGeneric: return "EULER_PRODUCT";
    case FactorKind::kC2: return "C2";
    case FactorKind::kJ: return "J";
    case FactorKind::kPrimeMean: return "PRIME_MEAN";
    case FactorKind::kU0: return "U0";
    case FactorKind::kKAt1: return "K_AT_1";
    case FactorKind::kMuK: return "MU_" + std::to_string(k);
    case FactorKind::kMuPrimeK: return "MU_PRIME_" + std::to_string(k);
    case FactorKind::kMu2Reference: return "MU2_REFERENCE";
  }
  return "?";
}

EulerProductResult euler_product(const std::function<double(std::int64_t)>& factor,
                                 std::int64_t truncation_prime, double tail_constant,
                                 FactorId id) {
  require_truncation(truncation_prime);
  double value = 1.0;
  arith::for_primes_up_to(truncation_prime, [&](std::int64_t p) {
    const double f = factor(p);
    if (!(f > 0.0)) {
      throw std::domain_error("euler_product: nonpositive factor at p = " + std::to_string(p));
    }
    value *= f;
  });
  return {value, truncation_prime, tail_constant / static_cast<double>(truncation_prime - 1), id};
}

EulerProductResult euler_product_log(const std::function<double(std::int64_t)>& factor,
                                     std::int64_t truncation_prime, double tail_constant,
                                     FactorId id) {
  require_truncation(truncation_prime);
  // Neumaier-compensated sum of logs, primes in ascending order
  double sum = 0.0, comp = 0.0;
  arith::for_primes_up_to(truncation_prime, [&](std::int64_t p) {
    const double f = factor(p);
    if (!(f > 0.0)) {
      throw std::domain_error("euler_product: nonpositive factor at p = " + std::to_string(p));
    }
    const double x = std::log(f);
    const double t = sum + x;
    comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  });
  return {std::exp(sum + comp), truncation_prime,
          tail_constant / static_cast<double>(truncation_prime - 1), id};
}

EulerProductResult named_constant(ConstantId id, std::int64_t truncation_prime) {
  require_truncation(truncation_prime);
  switch (id) {
    case ConstantId::kC2:
      return euler_product(
          [](std::int64_t p) {
            if (p == 2) return 1.0;
            const double q = static_cast<double>(p) - 1.0;
            return 1.0 - 1.0 / (q * q);
          },
          truncation_prime, 2.0, {FactorKind::kC2, 0});
    case ConstantId::kJ:
      return euler_product(
          [](std::int64_t p) {
            if (p == 2) return 1.0;
            const double d = static_cast<double>(p);
            return 1.0 + 1.0 / ((d - 2.0) * (d - 1.0) * (d + 1.0));
          },
          truncation_prime, 1.0, {FactorKind::kJ, 0});
    case ConstantId::kKAt1:
      return euler_product(
          [](std::int64_t p) {
            const double d = static_cast<double>(p);
            return 1.0 - 1.0 / ((d - 1.0) * (d - 1.0) * (d + 1.0));
          },
          truncation_prime, 1.0, {FactorKind::kKAt1, 0});
    case ConstantId::kU0: {
      EulerProductResult c2 = named_constant(ConstantId::kC2, truncation_prime);
      return {2.0 / 3.0 * c2.value, truncation_prime, c2.tail_bound, {FactorKind::kU0, 0}};
    }
    case ConstantId::kPrimeMean: {
      EulerProductResult c2 = named_constant(ConstantId::kC2, truncation_prime);
      EulerProductResult j = named_constant(ConstantId::kJ, truncation_prime);
      return {2.0 / 3.0 * c2.value * j.value, truncation_prime, c2.tail_bound + j.tail_bound,
              {FactorKind::kPrimeMean, 0}};
    }
  }
  throw std::domain_error("named_constant: unknown id");
}

double moment_factor(int k, std::int64_t ell) {
  if (ell < kExactFactorLimit) {
    const configspace::PSplit s = configspace::p_split(ell, k);
    return to_double(s.p_a + s.p_b + s.p_c);
  }
  return moment_factor_f64(k, ell);
}

EulerProductResult moment_mu(int k, std::int64_t truncation_prime) {
  require_truncation(truncation_prime);
  if (k < 0 || k > kMaxMomentExponent) {
    throw std::domain_error("moment_mu: k out of [0, 64] (binomial overflow guard)");
  }
  if (k == 0) return {1.0, truncation_prime, 0.0, {FactorKind::kMuK, 0}};
  if (k == 1) {
    // the per-prime factor is identically 1
    return {1.0, truncation_prime, 0.0, {FactorKind::kMuK, 1}};
  }
  const std::int64_t trunc = std::max(truncation_prime, kMinMomentTruncation);
  const FactorId id{FactorKind::kMuK, k};
  const auto factor = [k](std::int64_t ell) { return moment_factor(k, ell); };
  const double tail_c = 16.0 * k;
  return k >= 8 ? euler_product_log(factor, trunc, tail_c, id)
                : euler_product(factor, trunc, tail_c, id);
}

EulerProductResult moment_mu_prime(int k, std::int64_t truncation_prime) {
  require_truncation(truncation_prime);
  if (k < 0 || k > kMaxMomentExponent) {
    throw std::domain_error("moment_mu_prime: k out of [0, 64]");
  }
  if (k == 0) return {1.0, truncation_prime, 0.0, {FactorKind::kMuPrimeK, 0}};
  const std::int64_t trunc = std::max(truncation_prime, kMinMomentTruncation);
  const FactorId id{FactorKind::kMuPrimeK, k};
  const auto factor = [k](std::int64_t p) {
    const double d = static_cast<double>(p);
    return 1.0 - 1.0 / d + std::pow(1.0 - 1.0 / d, -k) / d;
  };
  const double tail_c = 2.0 * k;
  return k >= 8 ? euler_product_log(factor, trunc, tail_c, id)
                : euler_product(factor, trunc, tail_c, id);
}

EulerProductResult mu2_reference(std::int64_t truncation_prime) {
  require_truncation(truncation_prime);
  return euler_product(
      [](std::int64_t p) {
        const double l = static_cast<double>(p);
        // l^5 - l^3 - 2 l^2 - 2 l - 1, Horner form
        const double num = (((l * l - 1.0) * l - 2.0) * l - 2.0) * l - 1.0;
        const double l1 = l - 1.0;
        const double den = l1 * l1 * l1 * l1 * (l + 1.0) * (l + 1.0) * (l * l + l + 1.0);
        return 1.0 + num / den;
      },
      truncation_prime, 2.0, {FactorKind::kMu2Reference, 0});
}

}  // namespace kstarlab::constants
