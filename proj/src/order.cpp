// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/order.hpp"

#include <algorithm>
#include <numeric>

namespace bninfo {

namespace {

// Longest-path layer of each node, or throws naming a node on a cycle.
std::vector<int> layers_or_throw(int n, const std::vector<std::pair<int, int>>& arcs,
                                 const std::vector<VariableMeta>& nodes) {
  std::vector<std::vector<int>> children(n);
  std::vector<int> indegree(n, 0);
  for (const auto& [p, c] : arcs) {
    if (p == c) throw error("cycle involving node " + nodes[p].name);
    children[p].push_back(c);
    ++indegree[c];
  }
  std::vector<int> layer(n, 0), order;
  std::vector<int> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (int c : children[v]) {
      layer[c] = std::max(layer[c], layer[v] + 1);
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    for (int i = 0; i < n; ++i)
      if (indegree[i] > 0) throw error("cycle involving node " + nodes[i].name);
  }
  return layer;
}

}  // namespace

std::vector<int> total_order(const Dag& dag) {
  const int n = dag.node_count();
  std::vector<int> layer = layers_or_throw(n, dag.arcs, dag.nodes);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (layer[a] != layer[b]) return layer[a] < layer[b];
    return dag.nodes[a].name < dag.nodes[b].name;
  });
  return order;
}

std::vector<std::string> shared_total_order(const Dag& a, const Dag& b) {
  if (a.node_count() != b.node_count())
    throw error("incompatible orderings: node sets differ");
  for (const auto& node : b.nodes)
    if (a.index_of(node.name) < 0)
      throw error("incompatible orderings: node sets differ (" + node.name + ")");
  Dag merged;
  merged.nodes = a.nodes;
  merged.arcs = a.arcs;
  for (const auto& [p, c] : b.arcs) {
    int mp = merged.require(b.nodes[p].name);
    int mc = merged.require(b.nodes[c].name);
    if (!merged.has_arc(mp, mc)) merged.arcs.emplace_back(mp, mc);
  }
  try {
    return order_names(merged, total_order(merged));
  } catch (const error&) {
    throw error("incompatible orderings: arc union has a cycle");
  }
}

std::vector<std::string> order_names(const Dag& dag, const std::vector<int>& order) {
  std::vector<std::string> out;
  out.reserve(order.size());
  for (int i : order) out.push_back(dag.nodes[i].name);
  return out;
}

}  // namespace bninfo
