// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/entropy.hpp"

#include <cmath>
#include <numbers>

#include "bninfo/junction_tree.hpp"
#include "bninfo/subnet.hpp"
#include "bninfo/validate.hpp"

namespace bninfo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 0 log 0 = 0 throughout.
double column_entropy(const Cpt& cpt, int col) {
  double h = 0.0;
  for (int k = 0; k < cpt.rows; ++k) {
    const double p = cpt.at(k, col);
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double gaussian_node_entropy(double variance) {
  return 0.5 * std::log(kTwoPi * variance) + 0.5;
}

// H(X_i | parents) with parent-configuration weights from the junction tree.
// The weights are always taken from exact inference, even when the CPT's
// normalizing constants would be available.
double discrete_node_entropy(const Cpt& cpt, const JunctionTree& jt,
                             std::vector<double>& config_probs) {
  if (cpt.parents.empty()) {
    config_probs = {1.0};
    return column_entropy(cpt, 0);
  }
  const JointTable ptable = jt.query_marginal(cpt.parents);
  config_probs = ptable.probabilities;
  double h = 0.0;
  for (int j = 0; j < cpt.cols; ++j) h += config_probs[j] * column_entropy(cpt, j);
  return h;
}

}  // namespace

EntropyReport entropy_discrete(const Network& net) {
  require_valid(net);
  JunctionTree jt = JunctionTree::build(net);
  jt.calibrate();
  return entropy_discrete(net, jt);
}

EntropyReport entropy_discrete(const Network& net, const JunctionTree& jt) {
  EntropyReport rep;
  for (const auto& meta : net.dag.nodes) {
    const Cpt& cpt = net.cpt(meta.name);
    std::vector<double> probs;
    const double h = discrete_node_entropy(cpt, jt, probs);
    rep.per_node[meta.name] = h;
    rep.parent_config_probs[meta.name] = std::move(probs);
    rep.total += h;
  }
  return rep;
}

EntropyReport entropy_gbn(const Network& net) {
  require_valid(net);
  EntropyReport rep;
  for (const auto& meta : net.dag.nodes) {
    const double h = gaussian_node_entropy(net.gaussian(meta.name).variance);
    rep.per_node[meta.name] = h;
    rep.total += h;
  }
  return rep;
}

double entropy_mvn(const GaussianGlobal& global) {
  const double n = static_cast<double>(global.variables.size());
  return 0.5 * n + 0.5 * n * std::log(kTwoPi) + 0.5 * log_det_spd(global.covariance);
}

EntropyReport entropy_clgbn(const Network& net) {
  require_valid(net);
  if (net.kind != NetworkKind::clg) throw error("entropy_clgbn: network is not CLG");

  Network discrete_part = discrete_spanning_subnetwork(net);
  JunctionTree jt = JunctionTree::build(discrete_part);
  jt.calibrate();

  EntropyReport rep;
  for (const auto& meta : net.dag.nodes) {
    double h = 0.0;
    std::vector<double> probs;
    if (meta.kind == VarKind::discrete) {
      h = discrete_node_entropy(net.cpt(meta.name), jt, probs);
    } else {
      const ClgLocal& local = net.clg(meta.name);
      if (local.discrete_parents.empty()) {
        h = gaussian_node_entropy(local.components.front().variance);
        probs = {1.0};
      } else {
        const JointTable ptable = jt.query_marginal(local.discrete_parents);
        probs = ptable.probabilities;
        double s = 0.0;
        for (std::size_t d = 0; d < local.components.size(); ++d)
          s += probs[d] * std::log(kTwoPi * local.components[d].variance);
        h = 0.5 * s + 0.5;
      }
    }
    rep.per_node[meta.name] = h;
    rep.parent_config_probs[meta.name] = std::move(probs);
    rep.total += h;
  }
  return rep;
}

EntropyReport entropy(const Network& net) {
  switch (net.kind) {
    case NetworkKind::discrete: return entropy_discrete(net);
    case NetworkKind::gaussian: return entropy_gbn(net);
    case NetworkKind::clg: return entropy_clgbn(net);
  }
  throw error("entropy: unknown network kind");
}

}  // namespace bninfo
