// Apache License, Version 2.0, refer to LICENSE.txt
//
// End-to-end acceptance suite. Every check loads the shipped fixture files,
// runs the full pipeline, and compares against the worked-example values at
// fixed tolerances (2e-3 against 3-decimal printed values unless a tighter
// tolerance is stated). Prints one PASS/FAIL line per criterion; the exit
// code is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bninfo/bench.hpp"
#include "bninfo/entropy.hpp"
#include "bninfo/fit.hpp"
#include "bninfo/global.hpp"
#include "bninfo/io.hpp"
#include "bninfo/junction_tree.hpp"
#include "bninfo/kl.hpp"
#include "bninfo/sample.hpp"
#include "bninfo/subnet.hpp"
#include "bninfo/validate.hpp"

using namespace bninfo;

namespace {

const std::string kFixtures = BNINFO_FIXTURES_DIR;

struct Criterion {
  int number;
  std::string description;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void expect_near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: got %.6f, want %.6f (tol %g)", what.c_str(), got, want,
                    tol);
      failures.push_back(buf);
    }
  }
};

int g_failed = 0;

void run(int number, const std::string& description,
         const std::function<void(Criterion&)>& body) {
  Criterion c{number, description, {}};
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  if (c.failures.empty()) {
    std::printf("[PASS] criterion %2d: %s\n", number, description.c_str());
  } else {
    ++g_failed;
    std::printf("[FAIL] criterion %2d: %s\n", number, description.c_str());
    for (const auto& f : c.failures) std::printf("        - %s\n", f.c_str());
  }
  std::fflush(stdout);
}

Network fixture(const std::string& name) { return load_network(kFixtures + "/" + name); }

// Independent enumeration of a discrete joint (duplicated from the unit-test
// oracle on purpose: the acceptance suite stands alone).
std::vector<double> enumerate_joint(const Network& net) {
  const int n = net.dag.node_count();
  std::vector<int> radix(n);
  for (int i = 0; i < n; ++i) radix[i] = net.dag.nodes[i].level_count();
  std::size_t cells = 1;
  for (int r : radix) cells *= static_cast<std::size_t>(r);
  std::vector<double> joint;
  joint.reserve(cells);
  std::vector<int> config(n, 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      const Cpt& cpt = net.cpt(net.dag.nodes[i].name);
      std::size_t col = 0;
      for (const auto& pname : cpt.parents) {
        const int pid = net.dag.index_of(pname);
        col = col * static_cast<std::size_t>(radix[pid]) + static_cast<std::size_t>(config[pid]);
      }
      p *= cpt.at(config[i], static_cast<int>(col));
    }
    joint.push_back(p);
    for (int i = n - 1; i >= 0; --i) {
      if (++config[i] < radix[i]) break;
      config[i] = 0;
    }
  }
  return joint;
}

double max_param_diff(const Network& a, const Network& b) {
  double d = 0.0;
  for (const auto& meta : a.dag.nodes) {
    const LocalDist& la = a.local(meta.name);
    if (const auto* cpt = std::get_if<Cpt>(&la)) {
      const Cpt& other = b.cpt(meta.name);
      for (std::size_t k = 0; k < cpt->table.size(); ++k)
        d = std::max(d, std::abs(cpt->table[k] - other.table[k]));
    } else if (const auto* g = std::get_if<GaussianLocal>(&la)) {
      const GaussianLocal& other = b.gaussian(meta.name);
      d = std::max(d, std::abs(g->intercept - other.intercept));
      d = std::max(d, std::abs(g->variance - other.variance));
      for (std::size_t k = 0; k < g->coefficients.size(); ++k)
        d = std::max(d, std::abs(g->coefficients[k].second - other.coefficients[k].second));
    } else {
      const ClgLocal& mine = std::get<ClgLocal>(la);
      const ClgLocal& other = b.clg(meta.name);
      for (std::size_t c = 0; c < mine.components.size(); ++c) {
        d = std::max(d, std::abs(mine.components[c].intercept - other.components[c].intercept));
        d = std::max(d, std::abs(mine.components[c].variance - other.components[c].variance));
        for (std::size_t k = 0; k < mine.components[c].coefficients.size(); ++k)
          d = std::max(d, std::abs(mine.components[c].coefficients[k].second -
                                   other.components[c].coefficients[k].second));
      }
    }
  }
  return d;
}

constexpr double kTol = 2e-3;

}  // namespace

int main() {
  run(1, "discrete composition: P(a,d,f,h) = 0.051", [](Criterion& c) {
    const JointTable joint = compose_discrete(fixture("fig2_dbn_B.net"));
    c.expect_near(joint.at(std::vector<int>{0, 1, 1, 1}), 0.051, kTol, "P(a,d,f,h)");
    c.expect_near(joint.sum(), 1.0, 1e-9, "total mass");
  });

  run(2, "discrete entropy: 2.440 with per-node terms and junction-tree P(X3)",
      [](Criterion& c) {
        const Network net = fixture("fig2_dbn_B.net");
        const EntropyReport rep = entropy_discrete(net);
        c.expect_near(rep.total, 2.440, kTol, "H(B)");
        c.expect_near(rep.per_node.at("X1"), 0.691, kTol, "H(X1)");
        c.expect_near(rep.per_node.at("X2"), 0.641, kTol, "H(X2)");
        c.expect_near(rep.per_node.at("X3"), 0.536, kTol, "H(X3|X1,X2)");
        c.expect_near(rep.per_node.at("X4"), 0.572, kTol, "H(X4|X3)");

        JunctionTree jt = JunctionTree::build(net);
        jt.calibrate();
        const JointTable px3 = jt.query_marginal({"X3"});
        c.expect_near(px3.probabilities[0], 0.601, kTol, "P(X3=e)");
        c.expect_near(px3.probabilities[1], 0.399, kTol, "P(X3=f)");
      });

  run(3, "discrete KL: 0.687 via local route and brute-force joint route (1e-9 apart)",
      [](Criterion& c) {
        const Network b = fixture("fig2_dbn_B.net");
        const Network b2 = fixture("fig2_dbn_Bprime.net");
        const KlReport rep = kl_discrete(b, b2);
        c.expect_near(rep.value, 0.687, kTol, "KL local route");

        const std::vector<double> pj = enumerate_joint(b);
        const std::vector<double> qj = enumerate_joint(b2);
        double oracle = 0.0;
        for (std::size_t i = 0; i < pj.size(); ++i)
          if (pj[i] > 0.0) oracle += pj[i] * std::log(pj[i] / qj[i]);
        c.expect_near(oracle, 0.687, kTol, "KL joint route");
        c.expect(std::abs(rep.value - oracle) <= 1e-9, "routes differ by more than 1e-9");
      });

  run(4, "GBN composition and decomposition goldens", [](Criterion& c) {
    const Network net = fixture("fig1_gbn_B.net");
    const GaussianGlobal g = compose_gbn(net);
    c.expect_near(g.covariance(2, 2), 10.916, kTol, "Sigma[X3,X3]");
    c.expect_near(g.covariance(2, 3), 8.347, kTol, "Sigma[X3,X4]");
    c.expect_near(g.covariance(0, 2), 1.440, kTol, "Sigma[X1,X3]");
    c.expect_near(g.mean[0], 2.400, kTol, "E(X1)");
    c.expect_near(g.mean[1], 1.800, kTol, "E(X2)");
    c.expect_near(g.mean[3], 8.480, kTol, "E(X4)");
    c.expect_near(g.mean[2], 12.276, kTol, "E(X3)");

    const Network back = decompose_gbn(g, net.dag);
    c.expect_near(back.gaussian("X4").coefficient("X1"), 1.5, kTol, "beta X4<-X1");
    c.expect_near(back.gaussian("X4").coefficient("X2"), 2.6, kTol, "beta X4<-X2");
    c.expect_near(back.gaussian("X3").coefficient("X4"), 1.2, kTol, "beta X3<-X4");
    c.expect_near(back.gaussian("X4").intercept, 0.2, kTol, "intercept X4");
    c.expect_near(back.gaussian("X3").intercept, 2.1, kTol, "intercept X3");
  });

  run(5, "GBN entropy: 5.304 by the local and the multivariate-normal formulas",
      [](Criterion& c) {
        const Network net = fixture("fig1_gbn_B.net");
        c.expect_near(entropy_gbn(net).total, 5.304, kTol, "local formula");
        c.expect_near(entropy_mvn(compose_gbn(net)), 5.304, kTol, "mvn formula");
      });

  run(6, "GBN KL: 230.0846 by global, spectral and sparse routes (1e-8 together)",
      [](Criterion& c) {
        const Network b = fixture("fig1_gbn_B.net");
        const Network b2 = fixture("fig1_gbn_Bprime.net");
        const KlReport global = kl_mvn(compose_gbn(b), compose_gbn(b2), MvnRoute::direct);
        const KlReport spectral = kl_mvn(compose_gbn(b), compose_gbn(b2), MvnRoute::spectral);
        const KlReport sparse = kl_gbn_sparse(b, b2);

        c.expect_near(global.value, 230.0846, kTol, "global route");
        c.expect_near(spectral.value, 230.0846, kTol, "spectral route");
        c.expect_near(sparse.value, 230.0846, kTol, "sparse route");
        c.expect_near(global.diagnostics.at("trace"), 57.087, kTol, "trace");
        c.expect_near(sparse.diagnostics.at("frobenius"), 57.087, kTol, "Frobenius trace");
        c.expect_near(global.diagnostics.at("quadratic_form"), 408.362, kTol, "quadratic form");

        const auto& w = sparse.vectors.at("whitened_mean_diff");
        c.expect_near(w[0], 0.0, kTol, "whitened diff[0]");
        c.expect_near(w[1], -11.056, kTol, "whitened diff[1]");
        c.expect_near(w[2], -5.459, kTol, "whitened diff[2]");
        c.expect_near(w[3], 16.010, kTol, "whitened diff[3]");

        c.expect(std::abs(global.value - spectral.value) <= 1e-8, "global vs spectral > 1e-8");
        c.expect(std::abs(global.value - sparse.value) <= 1e-8, "global vs sparse > 1e-8");
      });

  run(7, "approximate GBN KL: bounds (5.281, 337.207), point 42.199, sandwich on 100 pairs",
      [](Criterion& c) {
        const auto [bounds, rep] =
            kl_gbn_bounds(fixture("fig1_gbn_B.net"), fixture("fig1_gbn_Bprime.net"));
        c.expect_near(bounds.lower, 5.281, kTol, "lower bound");
        c.expect_near(bounds.upper, 337.207, kTol, "upper bound");
        c.expect_near(bounds.point_estimate, 42.199, kTol, "geometric mean");

        for (std::uint64_t seed = 0; seed < 100; ++seed) {
          const Network rb = bench::random_sparse_gbn(10, 3, seed);
          const Network rb2 = bench::random_sparse_gbn(10, 3, seed + 5000);
          const auto [tb, tr] = kl_gbn_bounds(rb, rb2);
          const double exact = kl_mvn(compose_gbn(rb), compose_gbn(rb2)).diagnostics.at("trace");
          c.expect(tb.lower <= exact + 1e-9 && exact <= tb.upper + 1e-9,
                   "sandwich violated at seed " + std::to_string(seed));
        }
      });

  run(8, "empirical GBN KL: per-node terms, 1.383 vs exact 1.692, gap shrinks with n",
      [](Criterion& c) {
        const Network b = fixture("fig3_gbn_B.net");
        const Network b2 = fixture("fig3_gbn_Bprime.net");

        // Printed fitted-value vectors and residual variances (n = 10).
        FitSummary fit_b, fit_b2;
        fit_b.n = fit_b2.n = 10;
        fit_b.nodes["X1"] = {std::vector<double>(10, 2.889), {}, 0.558};
        fit_b.nodes["X2"] = {std::vector<double>(10, 1.673), {}, 1.595};
        fit_b.nodes["X3"] = {{17.293, 14.480, 8.675, 13.937, 14.846, 12.801, 13.449, 2.394, 9.670,
                              14.381},
                             {},
                             1.142};
        fit_b.nodes["X4"] = {{13.307, 11.447, 5.852, 8.635, 8.475, 9.018, 10.370, 2.376, 7.014,
                              10.489},
                             {},
                             1.523};
        fit_b2.nodes["X1"] = {std::vector<double>(10, 2.889), {}, 0.558};
        fit_b2.nodes["X2"] = {{1.207, 2.304, 1.778, 1.625, 1.754, 2.044, 1.127, 2.037, 0.840,
                               2.019},
                              {},
                              1.542};
        fit_b2.nodes["X3"] = {{15.529, 17.760, 9.408, 11.931, 12.261, 14.009, 11.918, 6.528,
                               7.019, 15.564},
                              {},
                              6.051};
        fit_b2.nodes["X4"] = {{11.110, 12.722, 6.686, 8.509, 8.748, 10.011, 8.500, 4.604, 4.959,
                               11.135},
                              {},
                              3.999};

        const KlReport rep = kl_gbn_empirical(b, fit_b, b2, fit_b2);
        const auto& terms = rep.vectors.at("per_node_terms");
        c.expect_near(terms[0], 0.0, kTol, "term X1");
        c.expect_near(terms[1], 0.066, kTol, "term X2");
        c.expect_near(terms[2], 0.878, kTol, "term X3");
        c.expect_near(terms[3], 0.440, kTol, "term X4");
        c.expect_near(rep.value, 1.383, kTol, "empirical total");
        c.expect_near(kl_gbn_sparse(b, b2).value, 1.692, kTol, "exact KL of the fitted pair");

        // Gap shrinkage: data from the Fig-1 GBN, median gap over 20 seeds.
        const Network truth = fixture("fig1_gbn_B.net");
        auto median_gap = [&](std::size_t n) {
          std::vector<double> gaps;
          for (std::uint64_t rep_i = 0; rep_i < 20; ++rep_i) {
            const SampleBatch batch = sample_network(truth, n, 31000 + rep_i);
            const FitResult f1 = fit_mle(b.dag, batch.data, NetworkKind::gaussian);
            const FitResult f2 = fit_mle(b2.dag, batch.data, NetworkKind::gaussian);
            const double emp = kl_gbn_empirical(f1.net, f1.summary, f2.net, f2.summary).value;
            const double exact = kl_gbn_sparse(f1.net, f2.net).value;
            gaps.push_back(std::abs(emp - exact));
          }
          std::sort(gaps.begin(), gaps.end());
          return gaps[gaps.size() / 2];
        };
        const double g100 = median_gap(100);
        const double g1000 = median_gap(1000);
        c.expect(g1000 < g100, "median gap not monotone: n=100 -> " + std::to_string(g100) +
                                   ", n=1000 -> " + std::to_string(g1000));
      });

  run(9, "CLGBN composition: component {c,e}, discrete joint, entropy 5.203 = 1.817 + 3.386",
      [](Criterion& c) {
        const Network net = fixture("fig2_clg_B.net");
        const MixtureGlobal mix = compose_clgbn(net);

        c.expect(mix.components.size() == 4, "expected 4 mixture components");
        const GaussianGlobal& ce = mix.components[0];  // {c, e}
        const double expect_cov[3][3] = {
            {0.094, 0.018, 0.019}, {0.018, 0.090, 0.004}, {0.019, 0.004, 1.004}};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            c.expect_near(ce.covariance(i, j), expect_cov[i][j], kTol, "component {c,e} cov");
        c.expect_near(ce.mean[0], 0.120, kTol, "component {c,e} mean X4");
        c.expect_near(ce.mean[1], 0.100, kTol, "component {c,e} mean X5");
        c.expect_near(ce.mean[2], 0.124, kTol, "component {c,e} mean X6");

        c.expect_near(mix.discrete_joint.at(std::vector<int>{0, 0, 0}), 0.040, kTol, "P(a,c,e)");
        c.expect_near(mix.discrete_joint.at(std::vector<int>{1, 1, 1}), 0.336, kTol, "P(b,d,f)");

        const EntropyReport rep = entropy_clgbn(net);
        c.expect_near(rep.total, 5.203, kTol, "H(B)");

        double h_discrete = 0.0;
        for (double p : mix.discrete_joint.probabilities)
          if (p > 0.0) h_discrete -= p * std::log(p);
        const JointTable weights = mix.discrete_joint.marginal({"X2", "X3"});
        double h_continuous = 0.0;
        for (std::size_t k = 0; k < 4; ++k)
          h_continuous += weights.probabilities[k] * entropy_mvn(mix.components[k]);
        c.expect_near(h_discrete, 1.817, kTol, "discrete split");
        c.expect_near(h_continuous, 3.386, kTol, "continuous split");
      });

  run(10, "CLGBN KL: 5.456 = 0.577 + 4.879; naive = sparse within 1e-9; weights and parts",
      [](Criterion& c) {
        const Network b = fixture("fig2_clg_B.net");
        const Network b2 = fixture("fig2_clg_Bprime.net");
        const KlReport sparse = kl_clgbn(b, b2, ClgMethod::sparse);
        const KlReport naive = kl_clgbn(b, b2, ClgMethod::naive);

        c.expect_near(sparse.value, 5.456, kTol, "total");
        c.expect_near(sparse.diagnostics.at("discrete_part"), 0.577, kTol, "discrete part");
        c.expect_near(sparse.diagnostics.at("continuous_part"), 4.879, kTol, "continuous part");
        c.expect(std::abs(naive.value - sparse.value) <= 1e-9, "naive vs sparse > 1e-9");
        c.expect(naive.vectors.at("component_weights").size() == 8, "naive must sum 8 configs");

        const auto& weights = sparse.vectors.at("component_weights");
        const auto& comp = sparse.vectors.at("component_kl");
        const double expect_w[] = {0.076, 0.304, 0.124, 0.496};
        const double expect_kl[] = {1.721, 4.303, 2.504, 6.310};
        c.expect(weights.size() == 4, "sparse must sum 4 configs");
        for (int i = 0; i < 4; ++i) {
          c.expect_near(weights[i], expect_w[i], kTol, "weight " + std::to_string(i));
          c.expect_near(comp[i], expect_kl[i], kTol, "component KL " + std::to_string(i));
        }
      });

  run(11, "property suites: roundtrips, junction-tree marginals, KL sanity, MC consistency",
      [](Criterion& c) {
        // Roundtrip compose/decompose, 50 random networks per family.
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
          const Network d = bench::random_discrete(6, 2, seed);
          c.expect(max_param_diff(d, decompose_discrete(compose_discrete(d), d.dag)) <= 1e-9,
                   "discrete roundtrip at seed " + std::to_string(seed));
          const Network g = bench::random_sparse_gbn(8, 3, seed);
          c.expect(max_param_diff(g, decompose_gbn(compose_gbn(g), g.dag)) <= 1e-9,
                   "gbn roundtrip at seed " + std::to_string(seed));
          const Network m = bench::random_clg(8, 3, 2, seed);
          c.expect(max_param_diff(m, decompose_clgbn(compose_clgbn(m), m.dag)) <= 1e-9,
                   "clg roundtrip at seed " + std::to_string(seed));
        }

        // Junction-tree marginals against brute force, 30 networks.
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
          const Network net = bench::random_discrete(7, 3, seed + 100);
          JunctionTree jt = JunctionTree::build(net);
          jt.calibrate();
          const std::vector<double> joint = enumerate_joint(net);
          const std::vector<std::vector<int>> queries = {{0}, {3, 1}, {0, 4, 6}, {2, 5}};
          for (const auto& ids : queries) {
            std::vector<std::string> names;
            for (int id : ids) names.push_back(net.dag.nodes[id].name);
            const JointTable got = jt.query_marginal(names);
            // Oracle marginal.
            std::vector<int> radix(7);
            for (int i = 0; i < 7; ++i) radix[i] = net.dag.nodes[i].level_count();
            std::vector<double> expect(got.cell_count(), 0.0);
            std::vector<int> config(7, 0);
            for (std::size_t cell = 0; cell < joint.size(); ++cell) {
              std::size_t idx = 0;
              for (int id : ids)
                idx = idx * static_cast<std::size_t>(radix[id]) +
                      static_cast<std::size_t>(config[id]);
              expect[idx] += joint[cell];
              for (int i = 6; i >= 0; --i) {
                if (++config[i] < radix[i]) break;
                config[i] = 0;
              }
            }
            for (std::size_t i = 0; i < expect.size(); ++i)
              c.expect(std::abs(got.probabilities[i] - expect[i]) <= 1e-9,
                       "junction-tree marginal off at seed " + std::to_string(seed));
          }
        }

        // KL non-negativity and identity zero.
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
          const Network g = bench::random_sparse_gbn(10, 3, seed);
          const Network g2 = bench::random_sparse_gbn(10, 3, seed + 5000);
          c.expect(kl_gbn_sparse(g, g2).value >= -1e-9, "gbn KL negative");
          c.expect(std::abs(kl_gbn_sparse(g, g).value) <= 1e-10, "gbn self-KL nonzero");
          const Network d = bench::random_discrete(6, 2, seed);
          c.expect(std::abs(kl_discrete(d, d).value) <= 1e-12, "discrete self-KL nonzero");
          const Network m = bench::random_clg(7, 3, 2, seed);
          c.expect(std::abs(kl_clgbn(m, m, ClgMethod::sparse).value) <= 1e-10,
                   "clg self-KL nonzero");
        }

        // MC consistency within 3 SE for entropy and KL on every family.
        const Network db = fixture("fig2_dbn_B.net");
        const Network db2 = fixture("fig2_dbn_Bprime.net");
        const Network gb = fixture("fig1_gbn_B.net");
        const Network gb2 = fixture("fig1_gbn_Bprime.net");
        const Network cb = fixture("fig2_clg_B.net");
        const Network cb2 = fixture("fig2_clg_Bprime.net");

        auto mc_close = [&](const McEstimate& est, double exact, const std::string& what) {
          c.expect(!est.infinite && std::abs(est.value - exact) <= 3.0 * est.std_error,
                   what + " outside 3 SE");
        };
        mc_close(mc_entropy(db, 100000, 501), entropy_discrete(db).total, "mc entropy discrete");
        mc_close(mc_entropy(gb, 100000, 502), entropy_gbn(gb).total, "mc entropy gbn");
        mc_close(mc_entropy(cb, 100000, 503), entropy_clgbn(cb).total, "mc entropy clg");
        mc_close(mc_kl(db, db2, 200000, 504), kl_discrete(db, db2).value, "mc KL discrete");
        mc_close(mc_kl(gb, gb2, 1000000, 505), kl_gbn_sparse(gb, gb2).value, "mc KL gbn");
        mc_close(mc_kl(cb, cb2, 200000, 506), kl_clgbn(cb, cb2, ClgMethod::sparse).value,
                 "mc KL clg");
      });

  run(12, "scaling: sparse beats global at N >= 100; approx slope <= 2.5; empirical linear in n",
      [](Criterion& c) {
        const std::vector<int> sizes = {50, 100, 200, 400};
        const auto global = bench::sweep_gbn_kl_global(sizes, 5, 2024);
        const auto sparse = bench::sweep_gbn_kl_sparse(sizes, 5, 2024);
        for (std::size_t i = 0; i < sizes.size(); ++i) {
          std::printf("        N=%4d  global %9.3f ms   sparse %9.3f ms\n", sizes[i],
                      global[i].median_ms, sparse[i].median_ms);
          if (sizes[i] >= 100)
            c.expect(sparse[i].median_ms < global[i].median_ms,
                     "sparse not faster at N=" + std::to_string(sizes[i]));
        }

        const auto approx = bench::sweep_gbn_kl_approx({100, 200, 400, 800, 1600}, 5, 77);
        const double approx_slope = bench::log_log_slope(approx);
        std::printf("        approx KL log-log slope: %.2f\n", approx_slope);
        c.expect(approx_slope <= 2.5, "approx slope " + std::to_string(approx_slope) + " > 2.5");

        const auto empirical =
            bench::sweep_gbn_kl_empirical(8, {1000, 10000, 100000, 1000000}, 5, 99);
        const double emp_slope = bench::log_log_slope(empirical);
        std::printf("        empirical KL log-log slope vs n: %.2f\n", emp_slope);
        c.expect(emp_slope >= 0.7 && emp_slope <= 1.3,
                 "empirical slope " + std::to_string(emp_slope) + " outside 1 +/- 0.3");
      });

  if (g_failed == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failed);
  return g_failed;
}
