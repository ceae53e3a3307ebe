// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <string>

#include "bninfo/types.hpp"

namespace bninfo {

/// Counter-based deterministic generator: every particle derives its own
/// splitmix64 stream from (seed, particle index), so batches are identical
/// regardless of how the particle range is split across threads.
inline constexpr const char* kGeneratorId = "splitmix64-v1";

struct SampleBatch {
  Dataset data;
  std::uint64_t seed = 0;
  std::string generator_id = kGeneratorId;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t m = 0;
  bool infinite = false;  // zero mass under the second network at a particle
};

/// Ancestral sampling in total topological order: inverse-CDF draws for
/// discrete nodes, normal draws for continuous ones (CLG components chosen
/// by the sampled discrete parents).
SampleBatch sample_network(const Network& net, std::size_t m, std::uint64_t seed);

/// log density/mass of one dataset row under the local factorization.
double log_density(const Network& net, const Dataset& data, std::size_t row);

/// Monte Carlo entropy: mean of -log density over m particles, with the
/// standard error of the per-particle terms.
McEstimate mc_entropy(const Network& net, std::size_t m, std::uint64_t seed);

/// Monte Carlo KL: mean of log p_b - log p_b2 over particles drawn from b.
McEstimate mc_kl(const Network& b, const Network& b2, std::size_t m, std::uint64_t seed);

}  // namespace bninfo
