// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bninfo/types.hpp"

namespace bninfo::bench {

struct BenchRecord {
  std::string operation;
  std::size_t size = 0;      // N for network-size sweeps, n for sample-size sweeps
  std::size_t arcs = 0;
  int repetitions = 0;
  double median_ms = 0.0;
};

/// Median wall time of `op` over `reps` runs, amortized over enough inner
/// iterations to make short operations measurable. Runs single-threaded:
/// the scaling claims are asymptotic, not parallel-speedup claims.
double timed_median_ms(const std::function<void()>& op, int reps);

/// Random c-sparse GBN over N nodes (deterministic in seed).
Network random_sparse_gbn(int n_nodes, int max_parents, std::uint64_t seed);

/// Random discrete network, binary/ternary levels, up to max_parents.
Network random_discrete(int n_nodes, int max_parents, std::uint64_t seed);

/// Random CLG network with m discrete and n_nodes - m continuous nodes.
Network random_clg(int n_nodes, int m_discrete, int max_parents, std::uint64_t seed);

// Sweeps used by the CLI `bench` subcommand and the acceptance suite.
std::vector<BenchRecord> sweep_gbn_kl_global(const std::vector<int>& sizes, int reps, std::uint64_t seed);
std::vector<BenchRecord> sweep_gbn_kl_sparse(const std::vector<int>& sizes, int reps, std::uint64_t seed);
std::vector<BenchRecord> sweep_gbn_kl_approx(const std::vector<int>& sizes, int reps, std::uint64_t seed);
std::vector<BenchRecord> sweep_gbn_kl_empirical(int n_nodes, const std::vector<std::size_t>& sample_sizes,
                                                int reps, std::uint64_t seed);

/// Least-squares slope of log(median_ms) against log(size).
double log_log_slope(const std::vector<BenchRecord>& records);

}  // namespace bninfo::bench
