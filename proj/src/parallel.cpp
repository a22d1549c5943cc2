#include "kstarlab/parallel.hpp"

namespace kstarlab::parallel {

int default_workers() {
  if (const char* env = std::getenv("KSTARLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace kstarlab::parallel
