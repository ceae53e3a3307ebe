// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/junction_tree.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bninfo/validate.hpp"

namespace bninfo {

namespace {

// CPT reshaped as a factor over (parents..., child), child fastest.
JointTable cpt_factor(const Network& net, const std::string& node) {
  const Cpt& cpt = net.cpt(node);
  std::vector<VariableMeta> vars;
  for (const auto& pname : cpt.parents) vars.push_back(net.dag.nodes[net.dag.require(pname)]);
  vars.push_back(net.dag.nodes[net.dag.require(node)]);
  JointTable factor(vars);
  for (int j = 0; j < cpt.cols; ++j)
    for (int k = 0; k < cpt.rows; ++k)
      factor.probabilities[static_cast<std::size_t>(j) * cpt.rows + k] = cpt.at(k, j);
  return factor;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

MoralGraph moralize(const Dag& dag) {
  const int n = dag.node_count();
  MoralGraph g;
  g.nodes = dag.nodes;
  g.adjacency.assign(n, std::vector<bool>(n, false));
  auto connect = [&](int a, int b) {
    if (a == b) return;
    g.adjacency[a][b] = g.adjacency[b][a] = true;
  };
  for (const auto& [p, c] : dag.arcs) connect(p, c);
  for (int c = 0; c < n; ++c) {
    const std::vector<int> parents = dag.parents_of(c);
    for (std::size_t i = 0; i < parents.size(); ++i)
      for (std::size_t j = i + 1; j < parents.size(); ++j) connect(parents[i], parents[j]);
  }
  return g;
}

JunctionTree JunctionTree::build(const Network& net, int width_cap) {
  require_valid(net);
  if (net.kind != NetworkKind::discrete)
    throw error("junction tree: network is not discrete");

  const int n = net.dag.node_count();
  MoralGraph moral = moralize(net.dag);

  // Min-fill elimination, ties by ascending name. The elimination cliques of
  // the resulting chordal graph, with non-maximal ones dropped, become the
  // tree nodes.
  auto adj = moral.adjacency;
  std::vector<bool> eliminated(n, false);
  std::vector<std::vector<int>> candidates;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_fill = -1;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::vector<int> nb;
      for (int u = 0; u < n; ++u)
        if (!eliminated[u] && adj[v][u]) nb.push_back(u);
      long fill = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!adj[nb[i]][nb[j]]) ++fill;
      if (best < 0 || fill < best_fill ||
          (fill == best_fill && net.dag.nodes[v].name < net.dag.nodes[best].name)) {
        best = v;
        best_fill = fill;
      }
    }
    std::vector<int> clique{best};
    for (int u = 0; u < n; ++u)
      if (!eliminated[u] && adj[best][u]) clique.push_back(u);
    std::sort(clique.begin(), clique.end());
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j)
        adj[clique[i]][clique[j]] = adj[clique[j]][clique[i]] = true;
    candidates.push_back(std::move(clique));
    eliminated[best] = true;
  }

  std::vector<std::vector<int>> cliques;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < candidates.size() && !redundant; ++j) {
      if (i == j) continue;
      const bool subset = std::includes(candidates[j].begin(), candidates[j].end(),
                                        candidates[i].begin(), candidates[i].end());
      if (subset && (candidates[i].size() < candidates[j].size() || j < i)) redundant = true;
    }
    if (!redundant) cliques.push_back(candidates[i]);
  }

  JunctionTree jt;
  jt.nodes_ = net.dag.nodes;
  for (const auto& clique : cliques) {
    std::vector<std::string> names;
    for (int v : clique) names.push_back(net.dag.nodes[v].name);
    jt.cliques_.push_back(std::move(names));
    jt.width_ = std::max(jt.width_, static_cast<int>(clique.size()));
  }
  if (jt.width_ > width_cap)
    throw error("junction tree width " + std::to_string(jt.width_) + " exceeds cap " +
                std::to_string(width_cap));

  // Maximum-separator-weight spanning tree; ties broken by the lexicographic
  // clique pair. Leftover components (disconnected moral graphs) are joined
  // through empty separators.
  struct Edge {
    int a, b;
    std::vector<int> shared;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < cliques.size(); ++i)
    for (std::size_t j = i + 1; j < cliques.size(); ++j) {
      Edge e{static_cast<int>(i), static_cast<int>(j), {}};
      std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(),
                            cliques[j].end(), std::back_inserter(e.shared));
      if (!e.shared.empty()) edges.push_back(std::move(e));
    }
  std::sort(edges.begin(), edges.end(), [&](const Edge& x, const Edge& y) {
    if (x.shared.size() != y.shared.size()) return x.shared.size() > y.shared.size();
    if (jt.cliques_[x.a] != jt.cliques_[y.a]) return jt.cliques_[x.a] < jt.cliques_[y.a];
    return jt.cliques_[x.b] < jt.cliques_[y.b];
  });

  UnionFind uf(static_cast<int>(cliques.size()));
  auto add_separator = [&](int a, int b, const std::vector<int>& shared) {
    Separator sep;
    sep.clique_a = a;
    sep.clique_b = b;
    std::vector<VariableMeta> vars;
    for (int v : shared) {
      sep.nodes.push_back(net.dag.nodes[v].name);
      vars.push_back(net.dag.nodes[v]);
    }
    sep.potential = JointTable(vars, 1.0);
    jt.separators_.push_back(std::move(sep));
  };
  for (const Edge& e : edges)
    if (uf.unite(e.a, e.b)) add_separator(e.a, e.b, e.shared);
  for (std::size_t j = 1; j < cliques.size(); ++j)
    if (uf.unite(0, static_cast<int>(j))) add_separator(0, static_cast<int>(j), {});

  jt.neighbors_.assign(cliques.size(), {});
  for (std::size_t s = 0; s < jt.separators_.size(); ++s) {
    jt.neighbors_[jt.separators_[s].clique_a].push_back(static_cast<int>(s));
    jt.neighbors_[jt.separators_[s].clique_b].push_back(static_cast<int>(s));
  }

  // Initialize potentials: each CPT multiplies into the first clique that
  // contains its family.
  for (const auto& clique : jt.cliques_) {
    std::vector<VariableMeta> vars;
    for (const auto& name : clique) vars.push_back(net.dag.nodes[net.dag.require(name)]);
    jt.potentials_.emplace_back(vars, 1.0);
  }
  for (int v = 0; v < n; ++v) {
    std::vector<int> family = net.dag.parents_of(v);
    family.push_back(v);
    std::sort(family.begin(), family.end());
    int host = -1;
    for (std::size_t k = 0; k < cliques.size() && host < 0; ++k)
      if (std::includes(cliques[k].begin(), cliques[k].end(), family.begin(), family.end()))
        host = static_cast<int>(k);
    if (host < 0) throw error("junction tree: family preservation failed");  // unreachable
    jt.potentials_[host].multiply_in(cpt_factor(net, net.dag.nodes[v].name));
  }
  return jt;
}

void JunctionTree::propagate() {
  if (cliques_.size() <= 1) return;

  // DFS from clique 0 fixes the schedule: collect along the reversed visit
  // order, then distribute along it.
  struct Step {
    int parent_clique, child_clique, separator;
  };
  std::vector<Step> steps;
  std::vector<bool> seen(cliques_.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int s : neighbors_[c]) {
      int other = separators_[s].clique_a == c ? separators_[s].clique_b : separators_[s].clique_a;
      if (seen[other]) continue;
      seen[other] = true;
      steps.push_back({c, other, s});
      stack.push_back(other);
    }
  }

  auto pass = [&](int from, int to, int sep_idx) {
    Separator& sep = separators_[sep_idx];
    JointTable incoming = potentials_[from].marginal(sep.nodes);
    JointTable ratio;
    incoming.divide_by_into(sep.potential, ratio);
    potentials_[to].multiply_in(ratio);
    sep.potential = std::move(incoming);
  };

  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    pass(it->child_clique, it->parent_clique, it->separator);
  for (const Step& st : steps) pass(st.parent_clique, st.child_clique, st.separator);
}

void JunctionTree::calibrate() {
  propagate();
  calibrated_ = true;
}

int JunctionTree::clique_containing(const std::vector<std::string>& vars) const {
  for (std::size_t k = 0; k < cliques_.size(); ++k) {
    bool all = true;
    for (const auto& v : vars)
      if (std::find(cliques_[k].begin(), cliques_[k].end(), v) == cliques_[k].end()) {
        all = false;
        break;
      }
    if (all) return static_cast<int>(k);
  }
  return -1;
}

JointTable JunctionTree::query_marginal(const std::vector<std::string>& vars) const {
  if (!calibrated_) throw error("query_marginal: tree is not calibrated");
  for (const auto& v : vars) {
    bool known = false;
    for (const auto& meta : nodes_) known = known || meta.name == v;
    if (!known) throw error("query_marginal: unknown variable " + v);
  }
  int host = clique_containing(vars);
  if (host >= 0) return potentials_[host].marginal(vars);
  return assemble_cross_clique(vars);
}

JointTable JunctionTree::assemble_cross_clique(const std::vector<std::string>& vars) const {
  // Pivot on the variables outside the best-overlapping clique: condition on
  // each pivot configuration, re-propagate a clone, and read the rest from
  // that clique. Potentials then hold unnormalized P(., pivot config), so the
  // assembled table is exact.
  int best = 0;
  int best_overlap = -1;
  for (std::size_t k = 0; k < cliques_.size(); ++k) {
    int overlap = 0;
    for (const auto& v : vars)
      if (std::find(cliques_[k].begin(), cliques_[k].end(), v) != cliques_[k].end()) ++overlap;
    if (overlap > best_overlap) {
      best = static_cast<int>(k);
      best_overlap = overlap;
    }
  }

  std::vector<std::string> inside, pivot;
  for (const auto& v : vars) {
    if (std::find(cliques_[best].begin(), cliques_[best].end(), v) != cliques_[best].end())
      inside.push_back(v);
    else
      pivot.push_back(v);
  }

  auto meta_of = [&](const std::string& name) -> const VariableMeta& {
    for (const auto& meta : nodes_)
      if (meta.name == name) return meta;
    throw error("query_marginal: unknown variable " + name);
  };
  std::vector<VariableMeta> result_vars, pivot_vars;
  for (const auto& v : vars) result_vars.push_back(meta_of(v));
  for (const auto& v : pivot) pivot_vars.push_back(meta_of(v));
  JointTable result(result_vars);

  const JointTable pivot_index(pivot_vars);
  std::vector<int> full(vars.size());
  for (std::size_t cfg = 0; cfg < pivot_index.cell_count(); ++cfg) {
    const std::vector<int> pconfig = pivot_index.config_of(cfg);

    JunctionTree clone = *this;
    for (std::size_t k = 0; k < pivot.size(); ++k) {
      int host = clone.clique_containing({pivot[k]});
      clone.potentials_[host].condition(pivot[k], pconfig[k]);
    }
    clone.propagate();

    JointTable sub = clone.potentials_[best].marginal(inside);
    for (std::size_t cell = 0; cell < sub.cell_count(); ++cell) {
      const std::vector<int> sconfig = sub.config_of(cell);
      std::size_t si = 0, pi = 0;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        if (si < inside.size() && vars[k] == inside[si])
          full[k] = sconfig[si++];
        else
          full[k] = pconfig[pi++];
      }
      result.probabilities[result.index_of(full)] = sub.probabilities[cell];
    }
  }
  return result;
}

}  // namespace bninfo
