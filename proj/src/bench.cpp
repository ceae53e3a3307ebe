// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "bninfo/entropy.hpp"
#include "bninfo/fit.hpp"
#include "bninfo/global.hpp"
#include "bninfo/kl.hpp"
#include "bninfo/parallel.hpp"
#include "bninfo/sample.hpp"

namespace bninfo::bench {

namespace {

using clock_type = std::chrono::steady_clock;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(mix64(seed)) {}
  std::uint64_t next() { return state = mix64(state); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

std::string node_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "V%03d", i);
  return buf;
}

// Distinct parents drawn from [0, i).
std::vector<int> draw_parents(Rng& rng, int i, int max_parents) {
  std::vector<int> parents;
  const int want = std::min(i, rng.below(max_parents + 1));
  while (static_cast<int>(parents.size()) < want) {
    const int p = rng.below(i);
    if (std::find(parents.begin(), parents.end(), p) == parents.end()) parents.push_back(p);
  }
  std::sort(parents.begin(), parents.end());
  return parents;
}

GaussianLocal random_gaussian_local(Rng& rng, const std::string& child,
                                    const std::vector<std::string>& parents) {
  GaussianLocal g;
  g.child = child;
  g.intercept = 2.0 * rng.uniform() - 1.0;
  for (const auto& pname : parents) {
    const double mag = 0.3 + 0.7 * rng.uniform();
    g.coefficients.emplace_back(pname, rng.uniform() < 0.5 ? -mag : mag);
  }
  g.variance = 0.5 + rng.uniform();
  return g;
}

// Dirichlet-ish column bounded away from zero so random pairs stay
// absolutely continuous.
void fill_cpt_column(Rng& rng, Cpt& cpt, int col) {
  double total = 0.0;
  for (int k = 0; k < cpt.rows; ++k) {
    cpt.at(k, col) = 0.1 + rng.uniform();
    total += cpt.at(k, col);
  }
  for (int k = 0; k < cpt.rows; ++k) cpt.at(k, col) /= total;
}

}  // namespace

Network random_sparse_gbn(int n_nodes, int max_parents, std::uint64_t seed) {
  Rng rng(seed);
  Network net;
  net.kind = NetworkKind::gaussian;
  for (int i = 0; i < n_nodes; ++i)
    net.dag.nodes.push_back({node_name(i), VarKind::continuous, {}});
  for (int i = 0; i < n_nodes; ++i) {
    std::vector<std::string> parent_names;
    for (int p : draw_parents(rng, i, max_parents)) {
      net.dag.arcs.emplace_back(p, i);
      parent_names.push_back(node_name(p));
    }
    net.locals.emplace(node_name(i), random_gaussian_local(rng, node_name(i), parent_names));
  }
  return net;
}

Network random_discrete(int n_nodes, int max_parents, std::uint64_t seed) {
  Rng rng(seed);
  Network net;
  net.kind = NetworkKind::discrete;
  for (int i = 0; i < n_nodes; ++i) {
    VariableMeta meta{node_name(i), VarKind::discrete, {}};
    const int r = 2 + rng.below(2);
    for (int k = 0; k < r; ++k) meta.levels.push_back(std::string(1, static_cast<char>('a' + k)));
    net.dag.nodes.push_back(std::move(meta));
  }
  for (int i = 0; i < n_nodes; ++i) {
    Cpt cpt;
    cpt.child = node_name(i);
    cpt.rows = net.dag.nodes[i].level_count();
    std::size_t q = 1;
    for (int p : draw_parents(rng, i, max_parents)) {
      net.dag.arcs.emplace_back(p, i);
      cpt.parents.push_back(node_name(p));
      q *= static_cast<std::size_t>(net.dag.nodes[p].level_count());
    }
    cpt.cols = static_cast<int>(q);
    cpt.table.assign(static_cast<std::size_t>(cpt.rows) * cpt.cols, 0.0);
    for (int j = 0; j < cpt.cols; ++j) fill_cpt_column(rng, cpt, j);
    net.locals.emplace(cpt.child, std::move(cpt));
  }
  return net;
}

Network random_clg(int n_nodes, int m_discrete, int max_parents, std::uint64_t seed) {
  Rng rng(seed);
  Network net;
  net.kind = NetworkKind::clg;
  for (int i = 0; i < m_discrete; ++i)
    net.dag.nodes.push_back({node_name(i), VarKind::discrete, {"a", "b"}});
  for (int i = m_discrete; i < n_nodes; ++i)
    net.dag.nodes.push_back({node_name(i), VarKind::continuous, {}});

  for (int i = 0; i < m_discrete; ++i) {
    Cpt cpt;
    cpt.child = node_name(i);
    cpt.rows = 2;
    std::size_t q = 1;
    for (int p : draw_parents(rng, i, std::min(max_parents, 2))) {
      net.dag.arcs.emplace_back(p, i);
      cpt.parents.push_back(node_name(p));
      q *= 2;
    }
    cpt.cols = static_cast<int>(q);
    cpt.table.assign(static_cast<std::size_t>(cpt.rows) * cpt.cols, 0.0);
    for (int j = 0; j < cpt.cols; ++j) fill_cpt_column(rng, cpt, j);
    net.locals.emplace(cpt.child, std::move(cpt));
  }
  for (int i = m_discrete; i < n_nodes; ++i) {
    ClgLocal local;
    local.child = node_name(i);
    // Up to two discrete parents and up to max_parents continuous ones.
    for (int p : draw_parents(rng, m_discrete, 2)) {
      net.dag.arcs.emplace_back(p, i);
      local.discrete_parents.push_back(node_name(p));
    }
    if (i > m_discrete)
      for (int offset : draw_parents(rng, i - m_discrete, max_parents)) {
        net.dag.arcs.emplace_back(m_discrete + offset, i);
        local.continuous_parents.push_back(node_name(m_discrete + offset));
      }
    const std::size_t n_configs = std::size_t{1} << local.discrete_parents.size();
    for (std::size_t cfg = 0; cfg < n_configs; ++cfg)
      local.components.push_back(random_gaussian_local(rng, local.child, local.continuous_parents));
    net.locals.emplace(local.child, std::move(local));
  }
  return net;
}

double timed_median_ms(const std::function<void()>& op, int reps) {
  const bool was_parallel = parallel::enabled();
  parallel::set_enabled(false);
  // Calibrate the inner loop so each repetition measures at least ~5 ms.
  auto t0 = clock_type::now();
  op();
  double once_ms =
      std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
  const int inner = once_ms >= 5.0 ? 1 : static_cast<int>(std::ceil(5.0 / std::max(once_ms, 1e-6)));

  std::vector<double> times;
  for (int r = 0; r < reps; ++r) {
    t0 = clock_type::now();
    for (int k = 0; k < inner; ++k) op();
    const double ms =
        std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
    times.push_back(ms / inner);
  }
  parallel::set_enabled(was_parallel);
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

namespace {

std::vector<BenchRecord> sweep_gbn_pair(const std::string& label, const std::vector<int>& sizes,
                                        int reps, std::uint64_t seed,
                                        const std::function<double(const Network&, const Network&)>& op) {
  std::vector<BenchRecord> out;
  for (int n : sizes) {
    const Network b = random_sparse_gbn(n, 3, seed + static_cast<std::uint64_t>(n));
    const Network b2 = random_sparse_gbn(n, 3, seed + static_cast<std::uint64_t>(n) + 777);
    volatile double sink = 0.0;
    BenchRecord rec;
    rec.operation = label;
    rec.size = static_cast<std::size_t>(n);
    rec.arcs = b.dag.arcs.size();
    rec.repetitions = reps;
    rec.median_ms = timed_median_ms([&] { sink = sink + op(b, b2); }, reps);
    out.push_back(rec);
  }
  return out;
}

}  // namespace

std::vector<BenchRecord> sweep_gbn_kl_global(const std::vector<int>& sizes, int reps,
                                             std::uint64_t seed) {
  return sweep_gbn_pair("gbn-kl-global", sizes, reps, seed, [](const Network& b, const Network& b2) {
    return kl_mvn(compose_gbn(b), compose_gbn(b2)).value;
  });
}

std::vector<BenchRecord> sweep_gbn_kl_sparse(const std::vector<int>& sizes, int reps,
                                             std::uint64_t seed) {
  return sweep_gbn_pair("gbn-kl-sparse", sizes, reps, seed, [](const Network& b, const Network& b2) {
    return kl_gbn_sparse(b, b2).value;
  });
}

std::vector<BenchRecord> sweep_gbn_kl_approx(const std::vector<int>& sizes, int reps,
                                             std::uint64_t seed) {
  return sweep_gbn_pair("gbn-kl-approx", sizes, reps, seed, [](const Network& b, const Network& b2) {
    return kl_gbn_bounds(b, b2).second.value;
  });
}

std::vector<BenchRecord> sweep_gbn_kl_empirical(int n_nodes,
                                                const std::vector<std::size_t>& sample_sizes,
                                                int reps, std::uint64_t seed) {
  const Network b = random_sparse_gbn(n_nodes, 3, seed);
  const Network b2 = random_sparse_gbn(n_nodes, 3, seed + 777);
  std::vector<BenchRecord> out;
  for (std::size_t n : sample_sizes) {
    const SampleBatch batch = sample_network(b, n, seed + n);
    const FitResult fit_b = fit_mle(b.dag, batch.data, NetworkKind::gaussian);
    const FitResult fit_b2 = fit_mle(b2.dag, batch.data, NetworkKind::gaussian);
    volatile double sink = 0.0;
    BenchRecord rec;
    rec.operation = "gbn-kl-empirical";
    rec.size = n;
    rec.arcs = b.dag.arcs.size();
    rec.repetitions = reps;
    rec.median_ms = timed_median_ms(
        [&] {
          sink = sink +
                 kl_gbn_empirical(fit_b.net, fit_b.summary, fit_b2.net, fit_b2.summary).value;
        },
        reps);
    out.push_back(rec);
  }
  return out;
}

double log_log_slope(const std::vector<BenchRecord>& records) {
  const std::size_t n = records.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& rec : records) {
    const double x = std::log(static_cast<double>(rec.size));
    const double y = std::log(std::max(rec.median_ms, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

}  // namespace bninfo::bench
