// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace bninfo::parallel {

/// Process-wide switch; the bench harness turns it off to pin one thread.
bool enabled();
void set_enabled(bool on);
int max_threads();

/// Parallel map over [0, n). Workers write disjoint slots only; callers that
/// need a scalar result reduce the slots serially afterwards so that results
/// do not depend on the thread count.
template <typename F>
void for_range(std::size_t n, F&& body) {
#if defined(_OPENMP)
  if (enabled() && n > 1) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace bninfo::parallel
