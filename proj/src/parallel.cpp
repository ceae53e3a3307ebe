// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/parallel.hpp"

#include <atomic>

namespace bninfo::parallel {

namespace {
std::atomic<bool> g_enabled{true};
}

bool enabled() { return g_enabled.load(std::memory_order_relaxed); }

void set_enabled(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

int max_threads() {
#if defined(_OPENMP)
  return enabled() ? omp_get_max_threads() : 1;
#else
  return 1;
#endif
}

}  // namespace bninfo::parallel
