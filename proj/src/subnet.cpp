// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/subnet.hpp"

#include <algorithm>
#include <set>

#include "bninfo/global.hpp"
#include "bninfo/joint_table.hpp"
#include "bninfo/validate.hpp"

namespace bninfo {

Network discrete_spanning_subnetwork(const Network& net) {
  Network out;
  out.kind = NetworkKind::discrete;
  for (int i : net.discrete_nodes()) out.dag.nodes.push_back(net.dag.nodes[i]);
  for (const auto& [p, c] : net.dag.arcs)
    if (net.dag.nodes[p].kind == VarKind::discrete && net.dag.nodes[c].kind == VarKind::discrete)
      out.dag.add_arc(net.dag.nodes[p].name, net.dag.nodes[c].name);
  for (const auto& node : out.dag.nodes) out.locals.emplace(node.name, net.cpt(node.name));
  return out;
}

ClgSubnetworks extract_subnetworks(const Network& net) {
  return extract_subnetworks(net, delta_union(net));
}

ClgSubnetworks extract_subnetworks(const Network& net, const std::vector<std::string>& by) {
  if (net.kind != NetworkKind::clg) throw error("extract_subnetworks: network is not CLG");
  require_valid(net);

  ClgSubnetworks out;
  out.discrete_part = discrete_spanning_subnetwork(net);

  std::set<std::string> subset(by.begin(), by.end());
  for (const auto& name : by) {
    int id = net.dag.require(name);
    if (net.dag.nodes[id].kind != VarKind::discrete)
      throw error("extract_subnetworks: " + name + " is not a discrete node");
  }
  // The subset must determine every continuous node's component.
  for (int i : net.continuous_nodes()) {
    for (const auto& pname : net.clg(net.dag.nodes[i].name).discrete_parents)
      if (!subset.count(pname))
        throw error("extract_subnetworks: subset misses discrete parent " + pname + " of " +
                    net.dag.nodes[i].name);
  }

  // Keep the subset in network node order so configurations index
  // deterministically.
  std::vector<int> ids;
  for (const auto& name : by) ids.push_back(net.dag.require(name));
  std::sort(ids.begin(), ids.end());
  for (int id : ids) out.config_vars.push_back(net.dag.nodes[id]);

  Dag cdag;
  for (int i : net.continuous_nodes()) cdag.nodes.push_back(net.dag.nodes[i]);
  for (const auto& [p, c] : net.dag.arcs)
    if (net.dag.nodes[p].kind == VarKind::continuous && net.dag.nodes[c].kind == VarKind::continuous)
      cdag.add_arc(net.dag.nodes[p].name, net.dag.nodes[c].name);

  const JointTable index(out.config_vars);
  const std::size_t n_configs = index.cell_count();
  out.gaussian_parts.reserve(n_configs);
  for (std::size_t cfg = 0; cfg < n_configs; ++cfg) {
    const std::vector<int> config = index.config_of(cfg);
    Network gbn;
    gbn.kind = NetworkKind::gaussian;
    gbn.dag = cdag;
    for (const auto& meta : cdag.nodes) {
      const ClgLocal& local = net.clg(meta.name);
      std::vector<int> levels_per_parent, dconfig;
      for (const auto& pname : local.discrete_parents) {
        int pos = -1;
        for (std::size_t k = 0; k < out.config_vars.size(); ++k)
          if (out.config_vars[k].name == pname) pos = static_cast<int>(k);
        levels_per_parent.push_back(out.config_vars[pos].level_count());
        dconfig.push_back(config[pos]);
      }
      const std::size_t comp = Cpt::config_index(levels_per_parent, dconfig);
      GaussianLocal g = local.components[comp];
      g.child = meta.name;
      gbn.locals.emplace(meta.name, std::move(g));
    }
    out.gaussian_parts.push_back(std::move(gbn));
  }
  return out;
}

}  // namespace bninfo
