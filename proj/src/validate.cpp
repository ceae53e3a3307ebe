// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bninfo/order.hpp"

namespace bninfo {

namespace {

constexpr double kColumnSumTol = 1e-9;

void check_cpt(const Network& net, int node, const Cpt& cpt, ValidationReport& rep) {
  const auto& meta = net.dag.nodes[node];
  const std::string& name = meta.name;
  auto add = [&](const std::string& msg) { rep.violations.push_back({name, msg}); };

  if (cpt.child != name) add("CPT child name mismatch");
  if (cpt.rows != meta.level_count()) add("CPT row count differs from level count");

  // Parents listed in the CPT must be exactly the DAG parents.
  std::set<int> dag_parents;
  for (int p : net.dag.parents_of(node)) dag_parents.insert(p);
  std::set<int> cpt_parents;
  std::size_t q = 1;
  for (const auto& pname : cpt.parents) {
    int p = net.dag.index_of(pname);
    if (p < 0) {
      add("CPT parent " + pname + " is not a node");
      return;
    }
    if (net.dag.nodes[p].kind != VarKind::discrete)
      add("discrete node has non-discrete parent " + pname);
    else
      q *= static_cast<std::size_t>(net.dag.nodes[p].level_count());
    if (!cpt_parents.insert(p).second) add("duplicate CPT parent " + pname);
  }
  if (cpt_parents != dag_parents) add("CPT parents do not match DAG arcs");
  if (static_cast<std::size_t>(cpt.cols) != q)
    add("CPT column count differs from the product of parent level counts");
  if (cpt.table.size() != static_cast<std::size_t>(cpt.rows) * cpt.cols) {
    add("CPT table size mismatch");
    return;
  }
  for (int j = 0; j < cpt.cols; ++j) {
    double sum = 0.0;
    for (int k = 0; k < cpt.rows; ++k) {
      double v = cpt.at(k, j);
      if (v < 0.0 || v > 1.0) add("CPT entry outside [0,1] in column " + std::to_string(j));
      sum += v;
    }
    if (std::abs(sum - 1.0) > kColumnSumTol)
      add("CPT column " + std::to_string(j) + " sums to " + std::to_string(sum));
  }
}

void check_gaussian(const Network& net, int node, const GaussianLocal& g,
                    const std::vector<int>& expected_parents, ValidationReport& rep) {
  const std::string& name = net.dag.nodes[node].name;
  auto add = [&](const std::string& msg) { rep.violations.push_back({name, msg}); };

  if (g.child != name) add("local child name mismatch");
  if (!(g.variance > 0.0)) add("variance must be positive");

  std::set<int> coef_parents;
  for (const auto& [pname, beta] : g.coefficients) {
    (void)beta;
    int p = net.dag.index_of(pname);
    if (p < 0) {
      add("coefficient for unknown node " + pname);
      continue;
    }
    if (!coef_parents.insert(p).second) add("duplicate coefficient for " + pname);
  }
  std::set<int> expected(expected_parents.begin(), expected_parents.end());
  if (coef_parents != expected) add("coefficient keys do not match the continuous parent set");
}

void check_clg(const Network& net, int node, const ClgLocal& c, ValidationReport& rep) {
  const auto& name = net.dag.nodes[node].name;
  auto add = [&](const std::string& msg) { rep.violations.push_back({name, msg}); };

  if (c.child != name) add("local child name mismatch");

  std::set<int> dparents, cparents;
  for (int p : net.dag.parents_of(node))
    (net.dag.nodes[p].kind == VarKind::discrete ? dparents : cparents).insert(p);

  std::set<int> listed_d, listed_c;
  std::size_t configs = 1;
  for (const auto& pname : c.discrete_parents) {
    int p = net.dag.index_of(pname);
    if (p < 0 || net.dag.nodes[p].kind != VarKind::discrete) {
      add("discrete parent " + pname + " is not a discrete node");
      return;
    }
    if (!listed_d.insert(p).second) add("duplicate discrete parent " + pname);
    configs *= static_cast<std::size_t>(net.dag.nodes[p].level_count());
  }
  for (const auto& pname : c.continuous_parents) {
    int p = net.dag.index_of(pname);
    if (p < 0) {
      add("continuous parent " + pname + " is not a node");
      return;
    }
    if (!listed_c.insert(p).second) add("duplicate continuous parent " + pname);
  }
  if (listed_d != dparents) add("listed discrete parents do not match DAG arcs");
  if (listed_c != cparents) add("listed continuous parents do not match DAG arcs");
  if (c.components.size() != configs)
    add("component count differs from the discrete parent configuration count");

  std::vector<int> cont_parent_ids(listed_c.begin(), listed_c.end());
  for (const auto& comp : c.components)
    check_gaussian(net, node, comp, cont_parent_ids, rep);
}

}  // namespace

ValidationReport validate_network(const Network& net) {
  ValidationReport rep;
  auto add = [&](const std::string& node, const std::string& msg) {
    rep.violations.push_back({node, msg});
  };

  // Node names unique; discrete variables have >= 2 unique levels.
  std::set<std::string> names;
  for (const auto& node : net.dag.nodes) {
    if (!names.insert(node.name).second) add(node.name, "duplicate node name");
    if (node.kind == VarKind::discrete) {
      if (node.level_count() < 2) add(node.name, "discrete variable needs at least 2 levels");
      std::set<std::string> lv(node.levels.begin(), node.levels.end());
      if (lv.size() != node.levels.size()) add(node.name, "duplicate level labels");
    }
  }

  // Arcs reference existing nodes, no self-loops, no duplicates, acyclic.
  std::set<std::pair<int, int>> seen;
  for (const auto& [p, c] : net.dag.arcs) {
    if (p < 0 || c < 0 || p >= net.dag.node_count() || c >= net.dag.node_count()) {
      add("", "arc references a missing node");
      continue;
    }
    if (p == c) add(net.dag.nodes[p].name, "self-loop");
    if (!seen.insert({p, c}).second) add(net.dag.nodes[c].name, "duplicate arc");
  }
  try {
    (void)total_order(net.dag);
  } catch (const error& e) {
    add("", std::string("cycle: ") + e.what());
  }

  // Kind constraints.
  for (const auto& node : net.dag.nodes) {
    if (net.kind == NetworkKind::discrete && node.kind != VarKind::discrete)
      add(node.name, "discrete network contains a continuous node");
    if (net.kind == NetworkKind::gaussian && node.kind != VarKind::continuous)
      add(node.name, "gaussian network contains a discrete node");
  }
  if (net.kind == NetworkKind::clg) {
    for (int i = 0; i < net.dag.node_count(); ++i) {
      if (net.dag.nodes[i].kind != VarKind::discrete) continue;
      for (int p : net.dag.parents_of(i))
        if (net.dag.nodes[p].kind == VarKind::continuous)
          add(net.dag.nodes[i].name, "discrete node has a continuous parent");
    }
  }

  // Exactly one local per node, of the right shape.
  for (int i = 0; i < net.dag.node_count(); ++i) {
    const auto& node = net.dag.nodes[i];
    auto it = net.locals.find(node.name);
    if (it == net.locals.end()) {
      add(node.name, "missing local distribution");
      continue;
    }
    const LocalDist& local = it->second;
    if (node.kind == VarKind::discrete) {
      if (const auto* cpt = std::get_if<Cpt>(&local))
        check_cpt(net, i, *cpt, rep);
      else
        add(node.name, "discrete node must have a CPT local");
    } else if (net.kind == NetworkKind::gaussian) {
      if (const auto* g = std::get_if<GaussianLocal>(&local))
        check_gaussian(net, i, *g, net.dag.parents_of(i), rep);
      else
        add(node.name, "continuous node in a gaussian network must have a Gaussian local");
    } else {
      if (const auto* c = std::get_if<ClgLocal>(&local))
        check_clg(net, i, *c, rep);
      else
        add(node.name, "continuous node in a CLG network must have a CLG local");
    }
  }
  for (const auto& [name, local] : net.locals) {
    (void)local;
    if (net.dag.index_of(name) < 0) add(name, "local distribution for a missing node");
  }

  return rep;
}

void require_valid(const Network& net) {
  ValidationReport rep = validate_network(net);
  if (!rep.ok()) throw error("invalid network:\n" + rep.to_string());
}

}  // namespace bninfo
