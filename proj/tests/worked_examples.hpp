// Apache License, Version 2.0, refer to LICENSE.txt
//
// The worked-example networks, built in code so unit tests do not depend on
// file loading. The fixture files under fixtures/ must load to exactly these
// (checked in test_io).
#pragma once

#include <string>
#include <vector>

#include "bninfo/types.hpp"

namespace testnets {

using namespace bninfo;

inline VariableMeta cont(const std::string& name) { return {name, VarKind::continuous, {}}; }
inline VariableMeta disc(const std::string& name, std::vector<std::string> levels) {
  return {name, VarKind::discrete, std::move(levels)};
}

inline GaussianLocal glocal(const std::string& child, double intercept,
                            std::vector<std::pair<std::string, double>> coefs, double variance) {
  return {child, intercept, std::move(coefs), variance};
}

inline Cpt cpt(const std::string& child, std::vector<std::string> parents, int rows,
               std::vector<double> rowmajor) {
  Cpt out;
  out.child = child;
  out.parents = std::move(parents);
  out.rows = rows;
  out.cols = static_cast<int>(rowmajor.size()) / rows;
  out.table = std::move(rowmajor);
  return out;
}

// Four-node GBN: X4 on {X1, X2}, X3 on X4.
inline Network fig1_gbn_b() {
  Network net;
  net.kind = NetworkKind::gaussian;
  net.dag.nodes = {cont("X1"), cont("X2"), cont("X3"), cont("X4")};
  net.dag.add_arc("X1", "X4");
  net.dag.add_arc("X2", "X4");
  net.dag.add_arc("X4", "X3");
  net.locals.emplace("X1", glocal("X1", 2.4, {}, 0.8));
  net.locals.emplace("X2", glocal("X2", 1.8, {}, 0.6));
  net.locals.emplace("X3", glocal("X3", 2.1, {{"X4", 1.2}}, 0.9));
  net.locals.emplace("X4", glocal("X4", 0.2, {{"X1", 1.5}, {"X2", 2.6}}, 1.1));
  return net;
}

// Same variables, different structure: everything hangs off X1.
inline Network fig1_gbn_bprime() {
  Network net;
  net.kind = NetworkKind::gaussian;
  net.dag.nodes = {cont("X1"), cont("X2"), cont("X3"), cont("X4")};
  net.dag.add_arc("X1", "X2");
  net.dag.add_arc("X1", "X3");
  net.dag.add_arc("X1", "X4");
  net.dag.add_arc("X3", "X2");
  net.locals.emplace("X1", glocal("X1", 2.4, {}, 0.8));
  net.locals.emplace("X2", glocal("X2", 0.5, {{"X1", 1.4}, {"X3", 1.2}}, 1.1));
  net.locals.emplace("X3", glocal("X3", 3.1, {{"X1", 1.3}}, 0.3));
  net.locals.emplace("X4", glocal("X4", 2.7, {{"X1", 0.8}}, 0.5));
  return net;
}

// Four binary variables: X3 on {X1, X2}, X4 on X3.
inline Network fig2_dbn_b() {
  Network net;
  net.kind = NetworkKind::discrete;
  net.dag.nodes = {disc("X1", {"a", "b"}), disc("X2", {"c", "d"}), disc("X3", {"e", "f"}),
                   disc("X4", {"g", "h"})};
  net.dag.add_arc("X1", "X3");
  net.dag.add_arc("X2", "X3");
  net.dag.add_arc("X3", "X4");
  net.locals.emplace("X1", cpt("X1", {}, 2, {0.53, 0.47}));
  net.locals.emplace("X2", cpt("X2", {}, 2, {0.34, 0.66}));
  net.locals.emplace("X3", cpt("X3", {"X1", "X2"}, 2,
                               {0.15, 0.75, 0.40, 0.80,
                                0.85, 0.25, 0.60, 0.20}));
  net.locals.emplace("X4", cpt("X4", {"X3"}, 2, {0.20, 0.42, 0.80, 0.58}));
  return net;
}

inline Network fig2_dbn_bprime() {
  Network net;
  net.kind = NetworkKind::discrete;
  net.dag.nodes = {disc("X1", {"a", "b"}), disc("X2", {"c", "d"}), disc("X3", {"e", "f"}),
                   disc("X4", {"g", "h"})};
  net.dag.add_arc("X1", "X2");
  net.dag.add_arc("X4", "X2");
  net.dag.add_arc("X1", "X3");
  net.dag.add_arc("X3", "X4");
  net.locals.emplace("X1", cpt("X1", {}, 2, {0.31, 0.69}));
  net.locals.emplace("X2", cpt("X2", {"X1", "X4"}, 2,
                               {0.38, 0.71, 0.51, 0.14,
                                0.62, 0.29, 0.49, 0.86}));
  net.locals.emplace("X3", cpt("X3", {"X1"}, 2, {0.44, 0.18, 0.56, 0.82}));
  net.locals.emplace("X4", cpt("X4", {"X3"}, 2, {0.26, 0.50, 0.74, 0.50}));
  return net;
}

// CLG: three binary discrete nodes on top, three continuous below.
inline Network fig2_clg_b() {
  Network net;
  net.kind = NetworkKind::clg;
  net.dag.nodes = {disc("X1", {"a", "b"}), disc("X2", {"c", "d"}), disc("X3", {"e", "f"}),
                   cont("X4"), cont("X5"), cont("X6")};
  net.dag.add_arc("X1", "X2");
  net.dag.add_arc("X2", "X4");
  net.dag.add_arc("X2", "X5");
  net.dag.add_arc("X3", "X5");
  net.dag.add_arc("X5", "X4");
  net.dag.add_arc("X4", "X6");
  net.locals.emplace("X1", cpt("X1", {}, 2, {0.4, 0.6}));
  net.locals.emplace("X2", cpt("X2", {"X1"}, 2, {0.5, 0.3, 0.5, 0.7}));
  net.locals.emplace("X3", cpt("X3", {}, 2, {0.2, 0.8}));
  ClgLocal x4;
  x4.child = "X4";
  x4.discrete_parents = {"X2"};
  x4.continuous_parents = {"X5"};
  x4.components = {glocal("X4", 0.1, {{"X5", 0.2}}, 0.09),
                   glocal("X4", 0.6, {{"X5", 0.8}}, 0.36)};
  net.locals.emplace("X4", std::move(x4));
  ClgLocal x5;
  x5.child = "X5";
  x5.discrete_parents = {"X2", "X3"};
  x5.components = {glocal("X5", 0.1, {}, 0.09), glocal("X5", 0.4, {}, 0.81),
                   glocal("X5", 0.2, {}, 0.36), glocal("X5", 0.4, {}, 1.44)};
  net.locals.emplace("X5", std::move(x5));
  ClgLocal x6;
  x6.child = "X6";
  x6.continuous_parents = {"X4"};
  x6.components = {glocal("X6", 0.1, {{"X4", 0.2}}, 1.0)};
  net.locals.emplace("X6", std::move(x6));
  return net;
}

inline Network fig2_clg_bprime() {
  Network net;
  net.kind = NetworkKind::clg;
  net.dag.nodes = {disc("X1", {"a", "b"}), disc("X2", {"c", "d"}), disc("X3", {"e", "f"}),
                   cont("X4"), cont("X5"), cont("X6")};
  net.dag.add_arc("X1", "X2");
  net.dag.add_arc("X2", "X3");
  net.dag.add_arc("X3", "X4");
  net.dag.add_arc("X3", "X5");
  net.dag.add_arc("X4", "X6");
  net.dag.add_arc("X5", "X6");
  net.locals.emplace("X1", cpt("X1", {}, 2, {0.7, 0.3}));
  net.locals.emplace("X2", cpt("X2", {"X1"}, 2, {0.3, 0.4, 0.7, 0.6}));
  net.locals.emplace("X3", cpt("X3", {"X2"}, 2, {0.5, 0.65, 0.5, 0.35}));
  ClgLocal x4;
  x4.child = "X4";
  x4.discrete_parents = {"X3"};
  x4.components = {glocal("X4", 0.3, {}, 0.16), glocal("X4", 1.0, {}, 0.09)};
  net.locals.emplace("X4", std::move(x4));
  ClgLocal x5;
  x5.child = "X5";
  x5.discrete_parents = {"X3"};
  x5.components = {glocal("X5", 1.4, {}, 1.69), glocal("X5", 0.5, {}, 2.25)};
  net.locals.emplace("X5", std::move(x5));
  ClgLocal x6;
  x6.child = "X6";
  x6.continuous_parents = {"X4", "X5"};
  x6.components = {glocal("X6", 0.1, {{"X4", 0.2}, {"X5", 0.7}}, 1.44)};
  net.locals.emplace("X6", std::move(x6));
  return net;
}

// GBN pair fitted by maximum likelihood on the ten-observation sample.
inline Network fig3_gbn_b() {
  Network net;
  net.kind = NetworkKind::gaussian;
  net.dag.nodes = {cont("X1"), cont("X2"), cont("X3"), cont("X4")};
  net.dag.add_arc("X1", "X4");
  net.dag.add_arc("X2", "X4");
  net.dag.add_arc("X4", "X3");
  net.locals.emplace("X1", glocal("X1", 2.889, {}, 0.558));
  net.locals.emplace("X2", glocal("X2", 1.673, {}, 1.595));
  net.locals.emplace("X3", glocal("X3", 0.896, {{"X4", 1.299}}, 1.142));
  net.locals.emplace("X4", glocal("X4", -2.095, {{"X1", 2.222}, {"X2", 2.613}}, 1.523));
  return net;
}

inline Network fig3_gbn_bprime() {
  Network net;
  net.kind = NetworkKind::gaussian;
  net.dag.nodes = {cont("X1"), cont("X2"), cont("X3"), cont("X4")};
  net.dag.add_arc("X1", "X2");
  net.dag.add_arc("X2", "X3");
  net.dag.add_arc("X2", "X4");
  net.locals.emplace("X1", glocal("X1", 2.889, {}, 0.558));
  net.locals.emplace("X2", glocal("X2", 3.505, {{"X1", -0.634}}, 1.542));
  net.locals.emplace("X3", glocal("X3", 7.284, {{"X2", 2.933}}, 6.051));
  net.locals.emplace("X4", glocal("X4", 5.151, {{"X2", 2.12}}, 3.999));
  return net;
}

}  // namespace testnets
