// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <string>
#include <vector>

#include "bninfo/types.hpp"

namespace bninfo {

/// Deterministic total topological order: nodes are layered by longest path
/// from a root, layers ordered by ascending name. Throws naming a node on a
/// cycle when the graph is not acyclic.
std::vector<int> total_order(const Dag& dag);

/// A total order compatible with both DAGs (topological sort of the arc
/// union). Both DAGs must share the node set. Throws "incompatible orderings"
/// when the union has a cycle.
std::vector<std::string> shared_total_order(const Dag& a, const Dag& b);

/// Helper: names in `order` index order.
std::vector<std::string> order_names(const Dag& dag, const std::vector<int>& order);

}  // namespace bninfo
