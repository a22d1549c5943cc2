#include "kstarlab/averages.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "kstarlab/parallel.hpp"

namespace kstarlab::averages {

namespace {

struct DecadeSnapshot {
  std::int64_t boundary = 0;
  double sum = 0;
  double comp = 0;
  std::int64_t terms = 0;
};

struct ChunkResult {
  parallel::CompensatedSum sum;
  std::int64_t terms = 0;
  double min_summand = std::numeric_limits<double>::infinity();
  double max_summand = -std::numeric_limits<double>::infinity();
  double max_r = 0;
  std::vector<DecadeSnapshot> snapshots;
};

bool in_index_set(Mode mode, std::int64_t n, const arith::SpfTable& table) {
  switch (mode) {
    case Mode::kAll: return true;
    case Mode::kOdd: return (n & 1) != 0;
    case Mode::kKCirc: return n >= 2;
    default: return table.is_prime(n);
  }
}

}  // namespace

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::kAll: return "all";
    case Mode::kOdd: return "odd";
    case Mode::kPrimeKstar: return "prime-kstar";
    case Mode::kPrimeK: return "prime-k";
    case Mode::kFShifted: return "f-shifted";
    case Mode::kKCirc: return "kcirc";
  }
  return "?";
}

Mode mode_from_name(const std::string& name) {
  if (name == "all") return Mode::kAll;
  if (name == "odd") return Mode::kOdd;
  if (name == "prime-kstar") return Mode::kPrimeKstar;
  if (name == "prime-k") return Mode::kPrimeK;
  if (name == "f-shifted") return Mode::kFShifted;
  if (name == "kcirc") return Mode::kKCirc;
  throw std::domain_error("unknown averaging mode: " + name);
}

PartialSumReport partial_sums(Mode mode, std::int64_t x, std::int64_t chunk,
                              const kfun::RunConstants& consts, const arith::SpfTable& table,
                              int workers) {
  if (x < 2) throw std::domain_error("partial_sums: x must be >= 2");
  if (x > kSieveCapacity) throw std::domain_error("partial_sums: x exceeds the 10^9 cap");
  if (chunk < kMinChunk) throw std::domain_error("partial_sums: chunk must be >= 10^4");
  if (x > table.limit()) throw std::domain_error("partial_sums: x exceeds the sieve limit");

  const std::int64_t index_lo = (mode == Mode::kKCirc) ? 2 : 1;

  auto worker = [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
    ChunkResult r;
    std::int64_t next_decade = 10;
    while (next_decade < lo) next_decade *= 10;
    for (std::int64_t n = lo; n <= hi; ++n) {
      if (in_index_set(mode, n, table)) {
        double summand = 0;
        double r_of_n = 0;
        switch (mode) {
          case Mode::kAll:
          case Mode::kOdd:
          case Mode::kPrimeKstar: {
            const kfun::KParts parts = kfun::k_parts(n, consts, table);
            summand = parts.k_star;
            r_of_n = parts.r;
            break;
          }
          case Mode::kPrimeK: {
            const kfun::KParts parts = kfun::k_parts(n, consts, table);
            summand = parts.k;
            r_of_n = parts.r;
            break;
          }
          case Mode::kFShifted:
            summand = kfun::big_f(table.factorize(n - 1));
            r_of_n = 1.0;
            break;
          case Mode::kKCirc:
            summand = kfun::k_circ(n, consts, table);
            r_of_n = kfun::r_ratio(table.factorize(n));
            break;
        }
        r.sum.add(summand);
        ++r.terms;
        r.min_summand = std::min(r.min_summand, summand);
        r.max_summand = std::max(r.max_summand, summand);
        r.max_r = std::max(r.max_r, r_of_n);
      }
      if (n == next_decade) {
        r.snapshots.push_back({n, r.sum.sum, r.sum.comp, r.terms});
        next_decade *= 10;
      }
    }
    return r;
  };

  const auto chunks = parallel::map_chunks<ChunkResult>(index_lo, x, chunk, workers, worker);

  PartialSumReport report;
  report.mode = mode;
  report.x = x;
  report.c2_tail_bound = consts.c2_tail_bound;
  report.min_summand = std::numeric_limits<double>::infinity();
  report.max_summand = -std::numeric_limits<double>::infinity();

  parallel::CompensatedSum running;
  std::int64_t running_terms = 0;
  for (const ChunkResult& c : chunks) {
    for (const DecadeSnapshot& snap : c.snapshots) {
      parallel::CompensatedSum at_decade = running;
      at_decade.add(snap.sum);
      at_decade.add(snap.comp);
      const std::int64_t terms_at = running_terms + snap.terms;
      report.decades.push_back(
          {snap.boundary, terms_at > 0 ? at_decade.value() / static_cast<double>(terms_at) : 0.0});
    }
    running.merge(c.sum);
    running_terms += c.terms;
    report.min_summand = std::min(report.min_summand, c.min_summand);
    report.max_summand = std::max(report.max_summand, c.max_summand);
    report.max_r_value = std::max(report.max_r_value, c.max_r);
  }

  report.sum = running.value();
  report.terms = running_terms;
  if (report.terms == 0) throw std::domain_error("partial_sums: empty index set");
  report.mean = report.sum / static_cast<double>(report.terms);

  report.reference_note = "theorem";
  switch (mode) {
    case Mode::kAll:
      report.reference = 1.0;
      break;
    case Mode::kOdd:
      report.reference = 2.0 / 3.0;
      break;
    case Mode::kPrimeKstar:
    case Mode::kPrimeK: {
      const auto j = constants::named_constant(constants::ConstantId::kJ, consts.truncation_prime);
      report.reference = 2.0 / 3.0 * consts.c2 * j.value;
      break;
    }
    case Mode::kFShifted: {
      const auto j = constants::named_constant(constants::ConstantId::kJ, consts.truncation_prime);
      report.reference = j.value;
      break;
    }
    case Mode::kKCirc:
      report.reference = 1.0;
      report.reference_note = "conjectural/diagnostic";
      break;
  }
  report.deviation = report.mean - report.reference;
  return report;
}

PartialSumReport partial_sums(Mode mode, std::int64_t x, std::int64_t chunk) {
  if (x < 2) throw std::domain_error("partial_sums: x must be >= 2");
  if (x > kSieveCapacity) throw std::domain_error("partial_sums: x exceeds the 10^9 cap");
  const arith::SpfTable table(std::max<std::int64_t>(x, 2));
  const kfun::RunConstants consts = kfun::run_constants();
  return partial_sums(mode, x, chunk, consts, table, parallel::default_workers());
}

}  // namespace kstarlab::averages
