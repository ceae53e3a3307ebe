// Apache License, Version 2.0, refer to LICENSE.txt
//
// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce the same numbers. Speedup depends on the
// machine; agreement does not.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "bninfo/bench.hpp"
#include "bninfo/matrix.hpp"
#include "bninfo/parallel.hpp"

namespace {

std::uint64_t next_u64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bninfo::Matrix random_dense(std::size_t n, std::uint64_t seed) {
  bninfo::Matrix m(n, n);
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53 - 0.5;
  return m;
}

bninfo::Matrix random_lower(std::size_t n, std::uint64_t seed) {
  bninfo::Matrix m(n, n);
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      m(i, j) = static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53 - 0.5;
    m(i, i) = 0.5 + static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53;
  }
  return m;
}

double max_abs_diff(const bninfo::Matrix& a, const bninfo::Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

double time_ms(const std::function<void()>& op, int reps) {
  // timed_median_ms pins a single thread; here we measure as configured.
  namespace chrono = std::chrono;
  std::vector<double> times;
  for (int r = 0; r < reps; ++r) {
    auto t0 = chrono::steady_clock::now();
    op();
    times.push_back(chrono::duration<double, std::milli>(chrono::steady_clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", bninfo::parallel::max_threads());
  std::printf("%-24s %8s %12s %12s %10s %12s\n", "kernel", "N", "serial ms", "omp ms", "speedup",
              "max |diff|");

  for (std::size_t n : {128, 256, 512}) {
    const bninfo::Matrix l = random_lower(n, 42 + n);
    const bninfo::Matrix a = random_dense(n, 99 + n);

    const bninfo::Matrix b = random_dense(n, 7 + n);
    bninfo::Matrix out_serial, out_par;
    double t_serial = time_ms([&] { out_serial = bninfo::serial::matmul(a, b); }, 5);
    double t_par = time_ms([&] { out_par = bninfo::matmul(a, b); }, 5);
    std::printf("%-24s %8zu %12.3f %12.3f %9.2fx %12.3g\n", "matmul", n, t_serial, t_par,
                t_serial / t_par, max_abs_diff(out_serial, out_par));

    t_serial = time_ms([&] { out_serial = bninfo::serial::mat_aat(a); }, 5);
    t_par = time_ms([&] { out_par = bninfo::mat_aat(a); }, 5);
    std::printf("%-24s %8zu %12.3f %12.3f %9.2fx %12.3g\n", "mat_aat", n, t_serial, t_par,
                t_serial / t_par, max_abs_diff(out_serial, out_par));

    t_serial = time_ms([&] { out_serial = bninfo::serial::invert_lower_triangular(l); }, 5);
    t_par = time_ms([&] { out_par = bninfo::invert_lower_triangular(l); }, 5);
    std::printf("%-24s %8zu %12.3f %12.3f %9.2fx %12.3g\n", "invert_lower_triangular", n, t_serial,
                t_par, t_serial / t_par, max_abs_diff(out_serial, out_par));
  }
  return 0;
}
