// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bninfo/types.hpp"

namespace bninfo {

/// Per-node fitted values and residuals from a maximum-likelihood fit,
/// kept for the empirical Kullback-Leibler approximation. Continuous nodes
/// only; fitted + residual reconstructs the observed column and
/// sigma2 = |residual|^2 / n.
struct FitSummary {
  struct PerNode {
    std::vector<double> fitted;
    std::vector<double> residuals;
    double sigma2 = 0.0;
  };
  std::map<std::string, PerNode> nodes;
  std::size_t n = 0;
};

struct FitResult {
  Network net;
  FitSummary summary;
};

/// Maximum-likelihood fit of the local distributions on `dag`:
/// CPT cells from counts, regressions by ordinary least squares with
/// variance = RSS / n (divisor n, not n - p). Discrete parent
/// configurations with no observations and singular regression designs are
/// errors naming the node.
FitResult fit_mle(const Dag& dag, const Dataset& data, NetworkKind kind);

}  // namespace bninfo
