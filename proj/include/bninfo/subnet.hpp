// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <string>
#include <vector>

#include "bninfo/types.hpp"

namespace bninfo {

/// Discrete-part and per-configuration Gaussian-part extraction of a CLG
/// network. The discrete part is the spanning subnetwork over the discrete
/// nodes with the original CPTs. For each configuration of `by` the Gaussian
/// part is a GBN over the continuous nodes whose locals are the matching
/// ClgLocal components.
struct ClgSubnetworks {
  Network discrete_part;
  std::vector<VariableMeta> config_vars;  // = `by`, network order
  std::vector<Network> gaussian_parts;    // mixed-radix over config_vars
};

/// `by` defaults to delta_union(net); it must be a subset of the discrete
/// nodes covering every continuous node's discrete parents.
ClgSubnetworks extract_subnetworks(const Network& net);
ClgSubnetworks extract_subnetworks(const Network& net, const std::vector<std::string>& by);

/// Just the discrete spanning subnetwork (also defined for discrete nets).
Network discrete_spanning_subnetwork(const Network& net);

}  // namespace bninfo
