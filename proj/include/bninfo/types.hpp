// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bninfo/error.hpp"

namespace bninfo {

enum class VarKind { discrete, continuous };

/// A random variable: a name, a kind, and (for discrete variables) its levels.
struct VariableMeta {
  std::string name;
  VarKind kind = VarKind::discrete;
  std::vector<std::string> levels;  // discrete only, size r_i >= 2

  int level_count() const { return static_cast<int>(levels.size()); }
  int level_index(const std::string& label) const;  // -1 if absent
};

/// Directed acyclic graph over a fixed node list. Arcs are (parent, child)
/// index pairs; acyclicity is checked by validate_network / total_order.
struct Dag {
  std::vector<VariableMeta> nodes;
  std::vector<std::pair<int, int>> arcs;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int index_of(const std::string& name) const;  // -1 if absent
  int require(const std::string& name) const;   // throws if absent
  bool has_arc(int parent, int child) const;
  void add_arc(const std::string& parent, const std::string& child);

  /// Parents of a node, sorted by node index.
  std::vector<int> parents_of(int node) const;
  std::vector<int> children_of(int node) const;
};

/// Conditional probability table. Rows are child levels, columns are parent
/// configurations in mixed-radix order with the first-listed parent varying
/// slowest. Column j sums to one.
struct Cpt {
  std::string child;
  std::vector<std::string> parents;  // ordered; fixes the column indexing
  int rows = 0;                      // r_i
  int cols = 0;                      // q_i
  std::vector<double> table;         // row-major, rows x cols

  double& at(int level, int config) { return table[static_cast<std::size_t>(level) * cols + config]; }
  double at(int level, int config) const { return table[static_cast<std::size_t>(level) * cols + config]; }

  /// Column index of a parent-level configuration (first parent slowest).
  static std::size_t config_index(const std::vector<int>& levels_per_parent,
                                  const std::vector<int>& config);
};

/// Linear-Gaussian local distribution: child = intercept + coefficients . parents + N(0, variance).
struct GaussianLocal {
  std::string child;
  double intercept = 0.0;
  std::vector<std::pair<std::string, double>> coefficients;  // ordered parent -> beta
  double variance = 0.0;

  double coefficient(const std::string& parent) const;
};

/// Conditional linear Gaussian local distribution: one GaussianLocal per
/// configuration of the discrete parents, each regressing on the same
/// continuous parents. Components are stored in mixed-radix configuration
/// order (first discrete parent slowest).
struct ClgLocal {
  std::string child;
  std::vector<std::string> discrete_parents;
  std::vector<std::string> continuous_parents;
  std::vector<GaussianLocal> components;
};

using LocalDist = std::variant<Cpt, GaussianLocal, ClgLocal>;

enum class NetworkKind { discrete, gaussian, clg };

struct Network {
  Dag dag;
  NetworkKind kind = NetworkKind::discrete;
  std::map<std::string, LocalDist> locals;

  const LocalDist& local(const std::string& node) const;
  const Cpt& cpt(const std::string& node) const;
  const GaussianLocal& gaussian(const std::string& node) const;
  const ClgLocal& clg(const std::string& node) const;

  std::vector<int> discrete_nodes() const;    // indices, network order
  std::vector<int> continuous_nodes() const;  // indices, network order
};

/// One dataset cell: a level index for discrete columns, a real for
/// continuous ones.
using Cell = std::variant<int, double>;

struct Dataset {
  std::vector<VariableMeta> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t row_count() const { return rows.size(); }
  int column_of(const std::string& name) const;
  int level_at(std::size_t row, int col) const { return std::get<int>(rows[row][col]); }
  double value_at(std::size_t row, int col) const { return std::get<double>(rows[row][col]); }
};

struct Violation {
  std::string node;  // empty when network-wide
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

const char* to_string(VarKind k);
const char* to_string(NetworkKind k);

}  // namespace bninfo
