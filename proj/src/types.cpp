// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/types.hpp"

#include <algorithm>
#include <sstream>

namespace bninfo {

int VariableMeta::level_index(const std::string& label) const {
  for (int i = 0; i < static_cast<int>(levels.size()); ++i)
    if (levels[i] == label) return i;
  return -1;
}

int Dag::index_of(const std::string& name) const {
  for (int i = 0; i < node_count(); ++i)
    if (nodes[i].name == name) return i;
  return -1;
}

int Dag::require(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw error("unknown node: " + name);
  return i;
}

bool Dag::has_arc(int parent, int child) const {
  return std::find(arcs.begin(), arcs.end(), std::make_pair(parent, child)) != arcs.end();
}

void Dag::add_arc(const std::string& parent, const std::string& child) {
  arcs.emplace_back(require(parent), require(child));
}

std::vector<int> Dag::parents_of(int node) const {
  std::vector<int> out;
  for (const auto& [p, c] : arcs)
    if (c == node) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Dag::children_of(int node) const {
  std::vector<int> out;
  for (const auto& [p, c] : arcs)
    if (p == node) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Cpt::config_index(const std::vector<int>& levels_per_parent,
                              const std::vector<int>& config) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < config.size(); ++k)
    idx = idx * static_cast<std::size_t>(levels_per_parent[k]) + static_cast<std::size_t>(config[k]);
  return idx;
}

double GaussianLocal::coefficient(const std::string& parent) const {
  for (const auto& [name, beta] : coefficients)
    if (name == parent) return beta;
  throw error("no coefficient for parent " + parent + " in local of " + child);
}

const LocalDist& Network::local(const std::string& node) const {
  auto it = locals.find(node);
  if (it == locals.end()) throw error("no local distribution for node " + node);
  return it->second;
}

const Cpt& Network::cpt(const std::string& node) const {
  const auto* p = std::get_if<Cpt>(&local(node));
  if (!p) throw error("node " + node + " does not have a CPT local");
  return *p;
}

const GaussianLocal& Network::gaussian(const std::string& node) const {
  const auto* p = std::get_if<GaussianLocal>(&local(node));
  if (!p) throw error("node " + node + " does not have a Gaussian local");
  return *p;
}

const ClgLocal& Network::clg(const std::string& node) const {
  const auto* p = std::get_if<ClgLocal>(&local(node));
  if (!p) throw error("node " + node + " does not have a CLG local");
  return *p;
}

std::vector<int> Network::discrete_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < dag.node_count(); ++i)
    if (dag.nodes[i].kind == VarKind::discrete) out.push_back(i);
  return out;
}

std::vector<int> Network::continuous_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < dag.node_count(); ++i)
    if (dag.nodes[i].kind == VarKind::continuous) out.push_back(i);
  return out;
}

int Dataset::column_of(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(columns.size()); ++i)
    if (columns[i].name == name) return i;
  return -1;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) {
    if (!v.node.empty()) os << v.node << ": ";
    os << v.message << "\n";
  }
  return os.str();
}

const char* to_string(VarKind k) {
  return k == VarKind::discrete ? "discrete" : "continuous";
}

const char* to_string(NetworkKind k) {
  switch (k) {
    case NetworkKind::discrete: return "discrete";
    case NetworkKind::gaussian: return "gaussian";
    case NetworkKind::clg: return "clg";
  }
  return "?";
}

}  // namespace bninfo
