// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <string>
#include <vector>

#include "bninfo/joint_table.hpp"
#include "bninfo/types.hpp"

namespace bninfo {

struct MoralGraph {
  std::vector<VariableMeta> nodes;
  std::vector<std::vector<bool>> adjacency;  // symmetric
};

MoralGraph moralize(const Dag& dag);

/// Clique tree of a discrete network. Construction: moralize, triangulate
/// with the min-fill heuristic (name tie-break), collect maximal cliques,
/// connect with a maximum-separator-weight spanning tree, multiply each CPT
/// into the first clique that contains its family. A disconnected moral
/// graph still yields one tree: the remaining components are joined through
/// empty separators.
class JunctionTree {
 public:
  struct Separator {
    int clique_a = -1, clique_b = -1;
    std::vector<std::string> nodes;
    JointTable potential;
  };

  static JunctionTree build(const Network& net, int width_cap = 25);

  /// Two-pass sum-product schedule (collect to clique 0, distribute back).
  /// Afterwards every clique potential is the joint marginal over its nodes.
  void calibrate();
  bool calibrated() const { return calibrated_; }

  /// Exact marginal over `vars` in the requested order. Within-clique
  /// queries marginalize that clique; cross-clique queries condition on a
  /// pivot subset, re-propagate a cloned tree per configuration, and
  /// assemble the joint.
  JointTable query_marginal(const std::vector<std::string>& vars) const;

  int width() const { return width_; }
  const std::vector<std::vector<std::string>>& cliques() const { return cliques_; }
  const std::vector<Separator>& separators() const { return separators_; }
  const std::vector<JointTable>& potentials() const { return potentials_; }

 private:
  JunctionTree() = default;
  void propagate();
  JointTable assemble_cross_clique(const std::vector<std::string>& vars) const;
  int clique_containing(const std::vector<std::string>& vars) const;  // -1 if none

  std::vector<VariableMeta> nodes_;
  std::vector<std::vector<std::string>> cliques_;  // node names, network order
  std::vector<Separator> separators_;
  std::vector<JointTable> potentials_;
  std::vector<std::vector<int>> neighbors_;  // clique -> separator indices
  bool calibrated_ = false;
  int width_ = 0;
};

}  // namespace bninfo
