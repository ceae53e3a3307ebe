// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bninfo/joint_table.hpp"
#include "bninfo/matrix.hpp"
#include "bninfo/types.hpp"

namespace bninfo {

/// Ordered lower-triangular factor of a Gaussian network: row i belongs to
/// the i-th node of `order`, C C^T is the covariance in `order` coordinates,
/// and the diagonal holds the node standard deviations. `perm_to_original[k]`
/// is the position in `order` of the network's k-th node.
struct CholeskyFactor {
  std::vector<std::string> order;
  Matrix matrix;
  std::vector<int> perm_to_original;
};

struct GaussianGlobal {
  std::vector<std::string> variables;
  std::vector<double> mean;
  Matrix covariance;
};

/// Gaussian-mixture global of a CLG network: the discrete joint supplies the
/// weights; components are indexed by configurations of `identifying_set`
/// (mixed-radix, first variable slowest). Every full discrete configuration
/// maps onto exactly one component.
struct MixtureGlobal {
  JointTable discrete_joint;                  // over all discrete variables
  std::vector<VariableMeta> identifying_set;  // subset indexing the components
  std::vector<GaussianGlobal> components;     // one per identifying configuration
};

inline constexpr std::size_t kDefaultCellCap = std::size_t{1} << 24;

JointTable compose_discrete(const Network& net, std::size_t cell_cap = kDefaultCellCap);
Network decompose_discrete(const JointTable& joint, const Dag& dag);

/// Factor construction walking the total order: diagonal = sqrt(variance),
/// row i below = beta . rows of the parents; means by forward substitution
/// of the intercepts. `order` defaults to total_order(dag); callers may pass
/// any valid topological order.
std::pair<CholeskyFactor, std::vector<double>> build_factor(const Network& net);
std::pair<CholeskyFactor, std::vector<double>> build_factor(const Network& net,
                                                            const std::vector<int>& order);

GaussianGlobal compose_gbn(const Network& net);
Network decompose_gbn(const GaussianGlobal& global, const Dag& dag);

/// Union of the discrete parents of the continuous nodes (network order).
std::vector<std::string> delta_union(const Network& net);

MixtureGlobal compose_clgbn(const Network& net, std::size_t cell_cap = kDefaultCellCap);
Network decompose_clgbn(const MixtureGlobal& mix, const Dag& dag);

}  // namespace bninfo
