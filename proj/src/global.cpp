// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/global.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "bninfo/order.hpp"
#include "bninfo/parallel.hpp"
#include "bninfo/subnet.hpp"
#include "bninfo/validate.hpp"

namespace bninfo {

namespace {

std::string config_label(const std::vector<VariableMeta>& vars, std::span<const int> config) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < config.size(); ++k) {
    if (k) os << ", ";
    os << vars[k].name << "=" << vars[k].levels[config[k]];
  }
  os << ")";
  return os.str();
}

}  // namespace

JointTable compose_discrete(const Network& net, std::size_t cell_cap) {
  require_valid(net);
  if (net.kind != NetworkKind::discrete) throw error("compose_discrete: network is not discrete");

  JointTable joint(net.dag.nodes);
  if (joint.cell_count() > cell_cap)
    throw error("global table too large: " + std::to_string(joint.cell_count()) + " cells");

  const int n = net.dag.node_count();
  struct NodeAccess {
    const Cpt* cpt;
    std::vector<int> parent_positions;
    std::vector<int> parent_levels;
  };
  std::vector<NodeAccess> access(n);
  for (int i = 0; i < n; ++i) {
    const Cpt& cpt = net.cpt(net.dag.nodes[i].name);
    NodeAccess a{&cpt, {}, {}};
    for (const auto& pname : cpt.parents) {
      int p = net.dag.require(pname);
      a.parent_positions.push_back(p);
      a.parent_levels.push_back(net.dag.nodes[p].level_count());
    }
    access[i] = std::move(a);
  }

  parallel::for_range(joint.cell_count(), [&](std::size_t cell) {
    const std::vector<int> config = joint.config_of(cell);
    double p = 1.0;
    std::vector<int> pconfig;
    for (int i = 0; i < n; ++i) {
      const NodeAccess& a = access[i];
      pconfig.resize(a.parent_positions.size());
      for (std::size_t k = 0; k < a.parent_positions.size(); ++k)
        pconfig[k] = config[a.parent_positions[k]];
      const auto col = Cpt::config_index(a.parent_levels, pconfig);
      p *= a.cpt->at(config[i], static_cast<int>(col));
    }
    joint.probabilities[cell] = p;
  });
  return joint;
}

Network decompose_discrete(const JointTable& joint, const Dag& dag) {
  for (const auto& node : dag.nodes)
    if (joint.position_of(node.name) < 0)
      throw error("decompose_discrete: " + node.name + " missing from the joint table");

  Network net;
  net.kind = NetworkKind::discrete;
  net.dag = dag;

  for (int i = 0; i < dag.node_count(); ++i) {
    const auto& meta = dag.nodes[i];
    std::vector<int> parents = dag.parents_of(i);

    std::vector<std::string> keep;
    std::vector<VariableMeta> parent_vars;
    for (int p : parents) {
      keep.push_back(dag.nodes[p].name);
      parent_vars.push_back(dag.nodes[p]);
    }
    keep.push_back(meta.name);
    JointTable family = joint.marginal(keep);

    Cpt cpt;
    cpt.child = meta.name;
    for (int p : parents) cpt.parents.push_back(dag.nodes[p].name);
    cpt.rows = meta.level_count();
    cpt.cols = static_cast<int>(table_cells(parent_vars));
    cpt.table.assign(static_cast<std::size_t>(cpt.rows) * cpt.cols, 0.0);

    // family is indexed (parents..., child) with the child fastest.
    for (int j = 0; j < cpt.cols; ++j) {
      double colsum = 0.0;
      for (int k = 0; k < cpt.rows; ++k)
        colsum += family.probabilities[static_cast<std::size_t>(j) * cpt.rows + k];
      if (colsum == 0.0) {
        JointTable parent_table(parent_vars);
        throw error("decompose_discrete: zero-probability parent configuration " +
                    config_label(parent_vars, parent_table.config_of(j)) + " for node " +
                    meta.name);
      }
      for (int k = 0; k < cpt.rows; ++k)
        cpt.at(k, j) = family.probabilities[static_cast<std::size_t>(j) * cpt.rows + k] / colsum;
    }
    net.locals.emplace(meta.name, std::move(cpt));
  }
  return net;
}

std::pair<CholeskyFactor, std::vector<double>> build_factor(const Network& net) {
  return build_factor(net, total_order(net.dag));
}

std::pair<CholeskyFactor, std::vector<double>> build_factor(const Network& net,
                                                            const std::vector<int>& order) {
  if (net.kind != NetworkKind::gaussian) throw error("build_factor: network is not gaussian");
  const int n = net.dag.node_count();
  if (static_cast<int>(order.size()) != n) throw error("build_factor: bad order");

  std::vector<int> row_of(n, -1);
  for (int i = 0; i < n; ++i) row_of[order[i]] = i;

  CholeskyFactor factor;
  factor.matrix = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  factor.perm_to_original.assign(row_of.begin(), row_of.end());
  std::vector<double> mean(n, 0.0);

  for (int i = 0; i < n; ++i) {
    const int node = order[i];
    factor.order.push_back(net.dag.nodes[node].name);
    const GaussianLocal& g = net.gaussian(net.dag.nodes[node].name);
    double mu = g.intercept;
    auto row = factor.matrix.row(static_cast<std::size_t>(i));
    for (const auto& [pname, beta] : g.coefficients) {
      const int prow = row_of[net.dag.require(pname)];
      if (prow < 0 || prow >= i) throw error("build_factor: order is not topological");
      const auto parent_row = factor.matrix.row(static_cast<std::size_t>(prow));
      for (int j = 0; j <= prow; ++j) row[static_cast<std::size_t>(j)] += beta * parent_row[static_cast<std::size_t>(j)];
      mu += beta * mean[prow];
    }
    row[static_cast<std::size_t>(i)] = std::sqrt(g.variance);
    mean[i] = mu;
  }
  return {std::move(factor), std::move(mean)};
}

GaussianGlobal compose_gbn(const Network& net) {
  require_valid(net);
  auto [factor, mean] = build_factor(net);
  Matrix sigma_ordered = mat_aat(factor.matrix);

  GaussianGlobal global;
  global.covariance = permute_sym(sigma_ordered, factor.perm_to_original);
  global.mean.resize(mean.size());
  for (int k = 0; k < net.dag.node_count(); ++k) {
    global.variables.push_back(net.dag.nodes[k].name);
    global.mean[k] = mean[factor.perm_to_original[k]];
  }
  return global;
}

Network decompose_gbn(const GaussianGlobal& global, const Dag& dag) {
  const int n = dag.node_count();
  if (static_cast<int>(global.variables.size()) != n)
    throw error("decompose_gbn: variable count mismatch");

  const std::vector<int> order = total_order(dag);
  std::vector<int> pos(n);  // row i of the ordered matrices <- position in `global`
  for (int i = 0; i < n; ++i) {
    const auto& name = dag.nodes[order[i]].name;
    auto it = std::find(global.variables.begin(), global.variables.end(), name);
    if (it == global.variables.end()) throw error("decompose_gbn: " + name + " missing from global");
    pos[i] = static_cast<int>(it - global.variables.begin());
  }

  Matrix sigma_ordered = permute_sym(global.covariance, pos);
  std::vector<double> mu_ordered(n);
  for (int i = 0; i < n; ++i) mu_ordered[i] = global.mean[pos[i]];

  Matrix c = cholesky_lower(sigma_ordered);  // throws when not positive definite
  Matrix cinv = invert_lower_triangular(c);

  // R = I - diag(C) C^-1; entries at (child, parent) are the regression
  // coefficients. Off-pattern entries are dropped: when `dag` is not an
  // I-map of the distribution the result is the projection onto `dag`.
  Matrix r(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      r(i, j) = (i == j ? 1.0 : 0.0) - c(i, i) * cinv(i, j);

  std::vector<int> row_of(n);
  for (int i = 0; i < n; ++i) row_of[order[i]] = i;

  Network net;
  net.kind = NetworkKind::gaussian;
  net.dag = dag;
  for (int k = 0; k < n; ++k) {
    const int i = row_of[k];
    GaussianLocal g;
    g.child = dag.nodes[k].name;
    g.variance = c(i, i) * c(i, i);
    double intercept = mu_ordered[i];
    for (int p : dag.parents_of(k)) {
      const int prow = row_of[p];
      const double beta = r(i, prow);
      g.coefficients.emplace_back(dag.nodes[p].name, beta);
      intercept -= beta * mu_ordered[prow];
    }
    g.intercept = intercept;
    net.locals.emplace(g.child, std::move(g));
  }
  return net;
}

std::vector<std::string> delta_union(const Network& net) {
  std::set<int> ids;
  for (int i : net.continuous_nodes()) {
    const ClgLocal& local = net.clg(net.dag.nodes[i].name);
    for (const auto& pname : local.discrete_parents) ids.insert(net.dag.require(pname));
  }
  std::vector<std::string> out;
  for (int id : ids) out.push_back(net.dag.nodes[id].name);
  return out;
}

MixtureGlobal compose_clgbn(const Network& net, std::size_t cell_cap) {
  require_valid(net);
  if (net.kind != NetworkKind::clg) throw error("compose_clgbn: network is not CLG");

  MixtureGlobal mix;
  mix.discrete_joint = compose_discrete(discrete_spanning_subnetwork(net), cell_cap);

  ClgSubnetworks subs = extract_subnetworks(net);
  mix.identifying_set = subs.config_vars;
  mix.components.resize(subs.gaussian_parts.size());
  parallel::for_range(subs.gaussian_parts.size(), [&](std::size_t k) {
    mix.components[k] = compose_gbn(subs.gaussian_parts[k]);
  });
  return mix;
}

Network decompose_clgbn(const MixtureGlobal& mix, const Dag& dag) {
  Network net;
  net.kind = NetworkKind::clg;
  net.dag = dag;

  // Discrete part: decompose the discrete joint under the spanning subgraph.
  Dag ddag;
  std::vector<int> discrete_ids, continuous_ids;
  for (int i = 0; i < dag.node_count(); ++i)
    (dag.nodes[i].kind == VarKind::discrete ? discrete_ids : continuous_ids).push_back(i);
  for (int i : discrete_ids) ddag.nodes.push_back(dag.nodes[i]);
  for (const auto& [p, c] : dag.arcs)
    if (dag.nodes[p].kind == VarKind::discrete && dag.nodes[c].kind == VarKind::discrete)
      ddag.add_arc(dag.nodes[p].name, dag.nodes[c].name);
  Network discrete_net = decompose_discrete(mix.discrete_joint, ddag);
  for (auto& [name, local] : discrete_net.locals) net.locals.emplace(name, std::move(local));

  // Continuous part: decompose only the needed components under the
  // continuous spanning subgraph.
  Dag cdag;
  for (int i : continuous_ids) cdag.nodes.push_back(dag.nodes[i]);
  for (const auto& [p, c] : dag.arcs)
    if (dag.nodes[p].kind == VarKind::continuous && dag.nodes[c].kind == VarKind::continuous)
      cdag.add_arc(dag.nodes[p].name, dag.nodes[c].name);

  JointTable id_index(mix.identifying_set);  // for configuration indexing only
  std::map<std::size_t, Network> decomposed;  // identifying config -> GBN locals
  auto decomposed_at = [&](const std::vector<int>& id_config) -> const Network& {
    const std::size_t key = id_index.index_of(id_config);
    auto it = decomposed.find(key);
    if (it == decomposed.end()) {
      if (key >= mix.components.size()) throw error("decompose_clgbn: component index out of range");
      it = decomposed.emplace(key, decompose_gbn(mix.components[key], cdag)).first;
    }
    return it->second;
  };

  for (int i : continuous_ids) {
    const auto& meta = dag.nodes[i];
    ClgLocal local;
    local.child = meta.name;
    std::vector<VariableMeta> dparent_vars;
    for (int p : dag.parents_of(i)) {
      if (dag.nodes[p].kind == VarKind::discrete) {
        local.discrete_parents.push_back(dag.nodes[p].name);
        dparent_vars.push_back(dag.nodes[p]);
      } else {
        local.continuous_parents.push_back(dag.nodes[p].name);
      }
    }

    const std::size_t n_configs = table_cells(dparent_vars);
    JointTable dp_index(dparent_vars);
    for (std::size_t cfg = 0; cfg < n_configs; ++cfg) {
      const std::vector<int> dconfig = n_configs == 1 ? std::vector<int>{} : dp_index.config_of(cfg);
      // Extend to a full identifying configuration; variables of the
      // identifying set outside this node's discrete parents default to
      // level 0 (all extensions agree when the mixture came from a CLG).
      std::vector<int> id_config(mix.identifying_set.size(), 0);
      for (std::size_t k = 0; k < mix.identifying_set.size(); ++k) {
        for (std::size_t d = 0; d < local.discrete_parents.size(); ++d)
          if (mix.identifying_set[k].name == local.discrete_parents[d])
            id_config[k] = dconfig[d];
      }
      local.components.push_back(decomposed_at(id_config).gaussian(meta.name));
    }
    net.locals.emplace(meta.name, std::move(local));
  }
  return net;
}

}  // namespace bninfo
