// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/sample.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bninfo/order.hpp"
#include "bninfo/parallel.hpp"
#include "bninfo/validate.hpp"

namespace bninfo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// splitmix64 stream keyed by (seed, particle). Each particle owns a stream,
// so batches do not depend on how the particle range is split over threads.
class ParticleRng {
 public:
  ParticleRng(std::uint64_t seed, std::uint64_t particle)
      : state_(mix64(seed) ^ mix64(particle * 0xD1342543DE82EF95ULL + 1)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform01() {  // in (0, 1]
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double normal() {  // Box-Muller, one draw per call
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  std::uint64_t state_;
};

struct Sampler {
  const Network& net;
  std::vector<int> order;
  // Per node: CPT/ClgLocal pointers and resolved parent column ids.
  struct NodePlan {
    const Cpt* cpt = nullptr;
    const GaussianLocal* gaussian = nullptr;
    const ClgLocal* clg = nullptr;
    std::vector<int> dparent_ids;
    std::vector<int> dparent_levels;
    // One id list per component, aligned with that component's coefficient
    // order (components may list their parents differently).
    std::vector<std::vector<int>> cparent_ids;
  };
  std::vector<NodePlan> plans;

  explicit Sampler(const Network& n) : net(n), order(total_order(n.dag)) {
    plans.resize(net.dag.node_count());
    for (int i = 0; i < net.dag.node_count(); ++i) {
      const auto& meta = net.dag.nodes[i];
      NodePlan& plan = plans[i];
      if (meta.kind == VarKind::discrete) {
        plan.cpt = &net.cpt(meta.name);
        for (const auto& pname : plan.cpt->parents) {
          const int p = net.dag.require(pname);
          plan.dparent_ids.push_back(p);
          plan.dparent_levels.push_back(net.dag.nodes[p].level_count());
        }
      } else if (net.kind == NetworkKind::gaussian) {
        plan.gaussian = &net.gaussian(meta.name);
        plan.cparent_ids.emplace_back();
        for (const auto& [pname, beta] : plan.gaussian->coefficients) {
          (void)beta;
          plan.cparent_ids.back().push_back(net.dag.require(pname));
        }
      } else {
        plan.clg = &net.clg(meta.name);
        for (const auto& pname : plan.clg->discrete_parents) {
          const int p = net.dag.require(pname);
          plan.dparent_ids.push_back(p);
          plan.dparent_levels.push_back(net.dag.nodes[p].level_count());
        }
        for (const auto& comp : plan.clg->components) {
          plan.cparent_ids.emplace_back();
          for (const auto& [pname, beta] : comp.coefficients) {
            (void)beta;
            plan.cparent_ids.back().push_back(net.dag.require(pname));
          }
        }
      }
    }
  }

  std::size_t component_index(const NodePlan& plan, const std::vector<Cell>& row) const {
    if (!plan.clg) return 0;
    std::vector<int> dconfig(plan.dparent_ids.size());
    for (std::size_t k = 0; k < plan.dparent_ids.size(); ++k)
      dconfig[k] = std::get<int>(row[plan.dparent_ids[k]]);
    return Cpt::config_index(plan.dparent_levels, dconfig);
  }

  void draw(std::vector<Cell>& row, ParticleRng& rng) const {
    for (int node : order) {
      const NodePlan& plan = plans[node];
      if (plan.cpt) {
        std::vector<int> dconfig(plan.dparent_ids.size());
        for (std::size_t k = 0; k < plan.dparent_ids.size(); ++k)
          dconfig[k] = std::get<int>(row[plan.dparent_ids[k]]);
        const auto col = static_cast<int>(Cpt::config_index(plan.dparent_levels, dconfig));
        const double u = rng.uniform01();
        double cum = 0.0;
        int level = plan.cpt->rows - 1;
        for (int k = 0; k < plan.cpt->rows; ++k) {
          cum += plan.cpt->at(k, col);
          if (u <= cum) {
            level = k;
            break;
          }
        }
        row[node] = level;
      } else {
        const std::size_t comp = component_index(plan, row);
        const GaussianLocal& g = plan.gaussian ? *plan.gaussian : plan.clg->components[comp];
        const auto& parent_ids = plan.cparent_ids[comp];
        double mu = g.intercept;
        for (std::size_t k = 0; k < parent_ids.size(); ++k)
          mu += g.coefficients[k].second * std::get<double>(row[parent_ids[k]]);
        row[node] = mu + rng.normal() * std::sqrt(g.variance);
      }
    }
  }

  // log density/mass of a row under the local factorization.
  double log_density(const std::vector<Cell>& row) const {
    double s = 0.0;
    for (int node = 0; node < net.dag.node_count(); ++node) {
      const NodePlan& plan = plans[node];
      if (plan.cpt) {
        std::vector<int> dconfig(plan.dparent_ids.size());
        for (std::size_t k = 0; k < plan.dparent_ids.size(); ++k)
          dconfig[k] = std::get<int>(row[plan.dparent_ids[k]]);
        const auto col = static_cast<int>(Cpt::config_index(plan.dparent_levels, dconfig));
        const double p = plan.cpt->at(std::get<int>(row[node]), col);
        if (p <= 0.0) return -std::numeric_limits<double>::infinity();
        s += std::log(p);
      } else {
        const std::size_t comp = component_index(plan, row);
        const GaussianLocal& g = plan.gaussian ? *plan.gaussian : plan.clg->components[comp];
        const auto& parent_ids = plan.cparent_ids[comp];
        double mu = g.intercept;
        for (std::size_t k = 0; k < parent_ids.size(); ++k)
          mu += g.coefficients[k].second * std::get<double>(row[parent_ids[k]]);
        const double x = std::get<double>(row[node]);
        s += -0.5 * std::log(kTwoPi * g.variance) - (x - mu) * (x - mu) / (2.0 * g.variance);
      }
    }
    return s;
  }
};

McEstimate summarize(const std::vector<double>& terms) {
  McEstimate est;
  est.m = terms.size();
  double mean = 0.0;
  for (double t : terms) {
    if (std::isinf(t)) {
      est.value = t;
      est.infinite = true;
      return est;
    }
    mean += t;
  }
  mean /= static_cast<double>(terms.size());
  double var = 0.0;
  for (double t : terms) var += (t - mean) * (t - mean);
  var /= static_cast<double>(terms.size());
  est.value = mean;
  est.std_error = std::sqrt(var / static_cast<double>(terms.size()));
  return est;
}

}  // namespace

SampleBatch sample_network(const Network& net, std::size_t m, std::uint64_t seed) {
  require_valid(net);
  if (m < 1) throw error("sample_network: need at least one particle");
  const Sampler sampler(net);

  SampleBatch batch;
  batch.seed = seed;
  batch.data.columns = net.dag.nodes;
  batch.data.rows.assign(m, std::vector<Cell>(net.dag.node_count()));
  parallel::for_range(m, [&](std::size_t i) {
    ParticleRng rng(seed, i);
    sampler.draw(batch.data.rows[i], rng);
  });
  return batch;
}

double log_density(const Network& net, const Dataset& data, std::size_t row) {
  const Sampler sampler(net);
  std::vector<Cell> cells(net.dag.node_count());
  for (int i = 0; i < net.dag.node_count(); ++i) {
    const int col = data.column_of(net.dag.nodes[i].name);
    if (col < 0) throw error("log_density: dataset has no column " + net.dag.nodes[i].name);
    cells[i] = data.rows[row][col];
  }
  return sampler.log_density(cells);
}

McEstimate mc_entropy(const Network& net, std::size_t m, std::uint64_t seed) {
  require_valid(net);
  const Sampler sampler(net);
  std::vector<double> terms(m);
  parallel::for_range(m, [&](std::size_t i) {
    ParticleRng rng(seed, i);
    std::vector<Cell> row(net.dag.node_count());
    sampler.draw(row, rng);
    terms[i] = -sampler.log_density(row);
  });
  return summarize(terms);
}

McEstimate mc_kl(const Network& b, const Network& b2, std::size_t m, std::uint64_t seed) {
  require_valid(b);
  require_valid(b2);
  const Sampler sampler_b(b);
  const Sampler sampler_b2(b2);
  // Columns of b2 may be ordered differently; map node ids.
  std::vector<int> remap(b.dag.node_count());
  for (int i = 0; i < b.dag.node_count(); ++i)
    remap[b2.dag.require(b.dag.nodes[i].name)] = i;

  std::vector<double> terms(m);
  parallel::for_range(m, [&](std::size_t i) {
    ParticleRng rng(seed, i);
    std::vector<Cell> row(b.dag.node_count());
    sampler_b.draw(row, rng);
    std::vector<Cell> row2(b.dag.node_count());
    for (int k = 0; k < b.dag.node_count(); ++k) row2[k] = row[remap[k]];
    terms[i] = sampler_b.log_density(row) - sampler_b2.log_density(row2);
  });
  return summarize(terms);
}

}  // namespace bninfo
