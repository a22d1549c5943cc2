// Batch partial sums of the K family over N <= x, with per-decade
// checkpoints and a deterministic parallel reduction: fixed-size chunks,
// Neumaier-compensated per-chunk sums, chunks merged in ascending index
// order.  Two runs with the same chunk size produce bit-identical sums
// regardless of the worker count.
//
// Modes and their predicted means:
//   ALL          K*(N) over 1..x            -> 1
//   ODD          K*(N) over odd N           -> 2/3
//   PRIME_KSTAR  K*(p) over primes          -> (2/3) C2 J
//   PRIME_K      K(p)  over primes          -> (2/3) C2 J
//   F_SHIFTED    F(p-1) over primes         -> J
//   KCIRC        K°(N) over 2..x            -> 1 (conjectural/diagnostic)

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kstarlab/arith.hpp"
#include "kstarlab/kfun.hpp"

namespace kstarlab::averages {

inline constexpr std::int64_t kSieveCapacity = 1'000'000'000;
inline constexpr std::int64_t kMinChunk = 10'000;
inline constexpr std::int64_t kDefaultChunk = 65'536;

enum class Mode { kAll, kOdd, kPrimeKstar, kPrimeK, kFShifted, kKCirc };

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);  // throws std::domain_error

struct DecadePoint {
  std::int64_t x = 0;
  double mean = 0;
};

struct PartialSumReport {
  Mode mode = Mode::kAll;
  std::int64_t x = 0;
  std::int64_t terms = 0;  // #{N <= x in the mode's index set}
  double sum = 0;
  double mean = 0;       // sum / terms
  double reference = 0;  // predicted mean
  double deviation = 0;  // mean - reference
  std::vector<DecadePoint> decades;
  double c2_tail_bound = 0;         // systematic error inherited from the C2 input
  std::string reference_note;       // "theorem", or "conjectural/diagnostic" for KCIRC
  double min_summand = 0;
  double max_summand = 0;
  double max_r_value = 0;  // max observed R(N); summands stay within (u0, max R]
};

PartialSumReport partial_sums(Mode mode, std::int64_t x, std::int64_t chunk,
                              const kfun::RunConstants& consts, const arith::SpfTable& table,
                              int workers);

// Convenience form: builds the sieve and run constants and uses the
// configured worker count.
PartialSumReport partial_sums(Mode mode, std::int64_t x, std::int64_t chunk = kDefaultChunk);

// Serial definitional stream of (n, K*(n)) for n = 1..x in ascending order;
// values are bit-identical to k_exact(n).k_star.
template <typename Fn>
void stream_kstar(std::int64_t x, const kfun::RunConstants& consts,
                  const arith::SpfTable& table, Fn&& fn) {
  for (std::int64_t n = 1; n <= x; ++n) {
    fn(n, kfun::k_star_of(n, consts, table));
  }
}

}  // namespace kstarlab::averages
