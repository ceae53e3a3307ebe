// Apache License, Version 2.0, refer to LICENSE.txt
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "bninfo/bench.hpp"
#include "bninfo/global.hpp"
#include "bninfo/junction_tree.hpp"
#include "oracles.hpp"
#include "worked_examples.hpp"

using namespace bninfo;

namespace {

bool clique_equals(const std::vector<std::string>& clique, std::set<std::string> expect) {
  return std::set<std::string>(clique.begin(), clique.end()) == expect;
}

// Structural invariants: tree shape, running intersection, family
// preservation.
void check_tree_invariants(const Network& net, const JunctionTree& jt) {
  REQUIRE(jt.separators().size() + 1 == jt.cliques().size());

  // Running intersection: for every node, the cliques containing it form a
  // connected subtree.
  for (const auto& meta : net.dag.nodes) {
    std::vector<int> holders;
    for (std::size_t k = 0; k < jt.cliques().size(); ++k)
      if (std::find(jt.cliques()[k].begin(), jt.cliques()[k].end(), meta.name) !=
          jt.cliques()[k].end())
        holders.push_back(static_cast<int>(k));
    REQUIRE(!holders.empty());

    // BFS over tree edges restricted to holder cliques.
    std::set<int> holder_set(holders.begin(), holders.end());
    std::set<int> reached{holders[0]};
    std::vector<int> queue{holders[0]};
    while (!queue.empty()) {
      const int c = queue.back();
      queue.pop_back();
      for (const auto& sep : jt.separators()) {
        const int other = sep.clique_a == c ? sep.clique_b : (sep.clique_b == c ? sep.clique_a : -1);
        if (other >= 0 && holder_set.count(other) && !reached.count(other)) {
          reached.insert(other);
          queue.push_back(other);
        }
      }
    }
    CHECK(reached.size() == holder_set.size());
  }

  // Family preservation and the width lower bound.
  int max_family = 0;
  for (int v = 0; v < net.dag.node_count(); ++v) {
    std::vector<std::string> family{net.dag.nodes[v].name};
    for (int p : net.dag.parents_of(v)) family.push_back(net.dag.nodes[p].name);
    max_family = std::max(max_family, static_cast<int>(family.size()));
    bool hosted = false;
    for (const auto& clique : jt.cliques()) {
      bool all = true;
      for (const auto& name : family)
        all = all && std::find(clique.begin(), clique.end(), name) != clique.end();
      hosted |= all;
    }
    CHECK(hosted);
  }
  CHECK(jt.width() >= max_family);
}

}  // namespace

TEST_CASE("junction tree of the worked discrete example") {
  const Network net = testnets::fig2_dbn_b();
  const MoralGraph moral = moralize(net.dag);
  // Moral edge between the co-parents X1 and X2.
  CHECK(moral.adjacency[0][1]);

  const JunctionTree jt = JunctionTree::build(net);
  REQUIRE(jt.cliques().size() == 2);
  bool found_123 = false, found_34 = false;
  for (const auto& clique : jt.cliques()) {
    found_123 |= clique_equals(clique, {"X1", "X2", "X3"});
    found_34 |= clique_equals(clique, {"X3", "X4"});
  }
  CHECK(found_123);
  CHECK(found_34);
  REQUIRE(jt.separators().size() == 1);
  CHECK(jt.separators()[0].nodes == std::vector<std::string>{"X3"});
  CHECK(jt.width() == 3);
}

TEST_CASE("a chain is already chordal") {
  Network net;
  net.kind = NetworkKind::discrete;
  net.dag.nodes = {testnets::disc("X1", {"a", "b"}), testnets::disc("X2", {"a", "b"}),
                   testnets::disc("X3", {"a", "b"})};
  net.dag.add_arc("X1", "X2");
  net.dag.add_arc("X2", "X3");
  net.locals.emplace("X1", testnets::cpt("X1", {}, 2, {0.3, 0.7}));
  net.locals.emplace("X2", testnets::cpt("X2", {"X1"}, 2, {0.2, 0.6, 0.8, 0.4}));
  net.locals.emplace("X3", testnets::cpt("X3", {"X2"}, 2, {0.5, 0.1, 0.5, 0.9}));
  const JunctionTree jt = JunctionTree::build(net);
  REQUIRE(jt.cliques().size() == 2);
  CHECK(clique_equals(jt.cliques()[0], {"X1", "X2"}));
  CHECK(clique_equals(jt.cliques()[1], {"X2", "X3"}));
}

TEST_CASE("tree invariants hold on random DAGs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Network net = bench::random_discrete(8, 3, seed);
    JunctionTree jt = JunctionTree::build(net);
    check_tree_invariants(net, jt);
  }
}

TEST_CASE("width cap is enforced") {
  const Network net = bench::random_discrete(8, 3, 11);
  CHECK_THROWS_WITH_AS(JunctionTree::build(net, 1), doctest::Contains("width"), error);
}

TEST_CASE("calibration yields the worked marginal and separator consistency") {
  const Network net = testnets::fig2_dbn_b();
  JunctionTree jt = JunctionTree::build(net);
  jt.calibrate();

  const JointTable px3 = jt.query_marginal({"X3"});
  CHECK(px3.probabilities[0] == doctest::Approx(0.601).epsilon(2e-3));
  CHECK(px3.probabilities[1] == doctest::Approx(0.399).epsilon(2e-3));

  // Adjacent cliques agree on their separator.
  for (const auto& sep : jt.separators()) {
    const JointTable from_a = jt.potentials()[sep.clique_a].marginal(sep.nodes);
    const JointTable from_b = jt.potentials()[sep.clique_b].marginal(sep.nodes);
    for (std::size_t i = 0; i < from_a.cell_count(); ++i)
      CHECK(from_a.probabilities[i] == doctest::Approx(from_b.probabilities[i]).epsilon(1e-9));
  }
}

TEST_CASE("single-clique tree calibrates to itself") {
  Network net;
  net.kind = NetworkKind::discrete;
  net.dag.nodes = {testnets::disc("X", {"a", "b"})};
  net.locals.emplace("X", testnets::cpt("X", {}, 2, {0.25, 0.75}));
  JunctionTree jt = JunctionTree::build(net);
  const std::vector<double> before = jt.potentials()[0].probabilities;
  jt.calibrate();
  CHECK(jt.potentials()[0].probabilities == before);
}

TEST_CASE("calibration is idempotent within 1e-12") {
  const Network net = bench::random_discrete(7, 3, 5);
  JunctionTree jt = JunctionTree::build(net);
  jt.calibrate();
  const std::vector<JointTable> snapshot = jt.potentials();
  jt.calibrate();
  for (std::size_t k = 0; k < snapshot.size(); ++k)
    for (std::size_t i = 0; i < snapshot[k].cell_count(); ++i)
      CHECK(jt.potentials()[k].probabilities[i] ==
            doctest::Approx(snapshot[k].probabilities[i]).epsilon(1e-12));
}

TEST_CASE("clique potentials equal brute-force joint marginals after calibration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Network net = bench::random_discrete(7, 3, seed + 100);
    JunctionTree jt = JunctionTree::build(net);
    jt.calibrate();
    const std::vector<double> joint = oracles::enumerate_joint(net);
    for (std::size_t k = 0; k < jt.cliques().size(); ++k) {
      std::vector<int> ids;
      for (const auto& name : jt.cliques()[k]) ids.push_back(net.dag.require(name));
      const std::vector<double> expect = oracles::marginalize(net, joint, ids);
      for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(jt.potentials()[k].probabilities[i] == doctest::Approx(expect[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("query_marginal reproduces the worked cross-entropy tables") {
  const Network net = testnets::fig2_dbn_b();
  JunctionTree jt = JunctionTree::build(net);
  jt.calibrate();

  // P(X2, {X1, X4}): cross-clique query (X2 and X4 share no clique).
  const JointTable x2x1x4 = jt.query_marginal({"X2", "X1", "X4"});
  CHECK(x2x1x4.at(std::vector<int>{0, 0, 0}) == doctest::Approx(0.070).epsilon(2e-2));
  CHECK(std::abs(x2x1x4.at(std::vector<int>{0, 0, 0}) - 0.070) < 2e-3);
  CHECK(x2x1x4.sum() == doctest::Approx(1.0).epsilon(1e-9));

  // P(X4, X3) = [[0.120, 0.167], [0.481, 0.231]].
  const JointTable x4x3 = jt.query_marginal({"X4", "X3"});
  CHECK(std::abs(x4x3.at(std::vector<int>{0, 0}) - 0.120) < 2e-3);
  CHECK(std::abs(x4x3.at(std::vector<int>{0, 1}) - 0.167) < 2e-3);
  CHECK(std::abs(x4x3.at(std::vector<int>{1, 0}) - 0.481) < 2e-3);
  CHECK(std::abs(x4x3.at(std::vector<int>{1, 1}) - 0.231) < 2e-3);
}

TEST_CASE("query_marginal rejects unknown variables") {
  JunctionTree jt = JunctionTree::build(testnets::fig2_dbn_b());
  jt.calibrate();
  CHECK_THROWS_AS(jt.query_marginal({"nope"}), error);
}

TEST_CASE("queries match brute-force marginals on random nets") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Network net = bench::random_discrete(7, 3, seed + 300);
    JunctionTree jt = JunctionTree::build(net);
    jt.calibrate();
    const std::vector<double> joint = oracles::enumerate_joint(net);

    // A few deterministic query shapes, including cross-clique ones.
    const std::vector<std::vector<int>> queries = {
        {0}, {3, 1}, {0, 4, 6}, {2, 5}, {1, 2, 3, 4}};
    for (const auto& ids : queries) {
      std::vector<std::string> names;
      for (int id : ids) names.push_back(net.dag.nodes[id].name);
      const JointTable got = jt.query_marginal(names);
      const std::vector<double> expect = oracles::marginalize(net, joint, ids);
      REQUIRE(got.cell_count() == expect.size());
      for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(got.probabilities[i] == doctest::Approx(expect[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("disconnected networks still produce one tree") {
  Network net;
  net.kind = NetworkKind::discrete;
  net.dag.nodes = {testnets::disc("A", {"x", "y"}), testnets::disc("B", {"x", "y"})};
  net.locals.emplace("A", testnets::cpt("A", {}, 2, {0.3, 0.7}));
  net.locals.emplace("B", testnets::cpt("B", {}, 2, {0.9, 0.1}));
  JunctionTree jt = JunctionTree::build(net);
  REQUIRE(jt.cliques().size() == 2);
  REQUIRE(jt.separators().size() == 1);
  CHECK(jt.separators()[0].nodes.empty());
  jt.calibrate();
  const JointTable ab = jt.query_marginal({"A", "B"});
  CHECK(ab.at(std::vector<int>{0, 0}) == doctest::Approx(0.27).epsilon(1e-12));
  CHECK(ab.at(std::vector<int>{1, 1}) == doctest::Approx(0.07).epsilon(1e-12));
}
