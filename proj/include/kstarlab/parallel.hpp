// Deterministic chunked parallelism.  A range is split into fixed-size
// chunks indexed from zero; workers claim chunk indices from an atomic
// counter, each chunk is processed sequentially, and the per-chunk results
// are merged by the caller in ascending chunk order.  The outcome therefore
// depends on the chunk size but never on the worker count or scheduling.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace kstarlab::parallel {

// KSTARLAB_THREADS overrides hardware parallelism (results are identical
// either way; this only changes wall time).
int default_workers();

// Neumaier two-term compensated accumulator.  value() = sum + compensation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  // fold another partial in, preserving a deterministic merge order
  void merge(const CompensatedSum& other) {
    add(other.sum);
    add(other.comp);
  }

  double value() const { return sum + comp; }
};

inline std::int64_t chunk_count(std::int64_t lo, std::int64_t hi, std::int64_t chunk) {
  return hi < lo ? 0 : (hi - lo) / chunk + 1;
}

// worker(chunk_index, chunk_lo, chunk_hi_inclusive) -> Result.  Results come
// back indexed by chunk, ready for an in-order merge.
template <typename Result, typename Worker>
std::vector<Result> map_chunks(std::int64_t lo, std::int64_t hi, std::int64_t chunk,
                               int workers, Worker&& worker) {
  const std::int64_t n_chunks = chunk_count(lo, hi, chunk);
  std::vector<Result> results(static_cast<std::size_t>(n_chunks));
  if (n_chunks == 0) return results;
  std::atomic<std::int64_t> next{0};
  auto run = [&]() {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n_chunks) break;
      const std::int64_t c_lo = lo + i * chunk;
      const std::int64_t c_hi = std::min(hi, c_lo + chunk - 1);
      results[static_cast<std::size_t>(i)] = worker(i, c_lo, c_hi);
    }
  };
  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(n_chunks)));
  if (n_threads == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace kstarlab::parallel
