// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bninfo/global.hpp"
#include "bninfo/types.hpp"

namespace bninfo {

/// Shannon entropy in nats, split per node. For nodes with (discrete)
/// parents, parent_config_probs holds the parent-configuration weights used,
/// indexed like the CPT columns (or like the ClgLocal components).
struct EntropyReport {
  double total = 0.0;
  std::map<std::string, double> per_node;
  std::map<std::string, std::vector<double>> parent_config_probs;
};

class JunctionTree;

EntropyReport entropy_discrete(const Network& net);
/// Reuse an already-calibrated junction tree of `net`.
EntropyReport entropy_discrete(const Network& net, const JunctionTree& jt);
EntropyReport entropy_gbn(const Network& net);
EntropyReport entropy_clgbn(const Network& net);

/// N/2 + N/2 log(2 pi) + 1/2 log det(Sigma), det via Cholesky.
double entropy_mvn(const GaussianGlobal& global);

/// Dispatch on network kind.
EntropyReport entropy(const Network& net);

}  // namespace bninfo
