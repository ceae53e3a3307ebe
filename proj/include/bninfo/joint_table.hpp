// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <span>
#include <string>
#include <vector>

#include "bninfo/types.hpp"

namespace bninfo {

/// Dense probability table over an ordered list of discrete variables.
/// Cells are indexed mixed-radix with the first variable varying slowest.
/// A table over zero variables is a scalar (one cell).
struct JointTable {
  std::vector<VariableMeta> variables;
  std::vector<double> probabilities;

  JointTable() = default;
  explicit JointTable(std::vector<VariableMeta> vars, double fill = 0.0);

  std::size_t cell_count() const { return probabilities.size(); }
  int var_count() const { return static_cast<int>(variables.size()); }
  int position_of(const std::string& name) const;  // -1 if absent

  std::size_t index_of(std::span<const int> config) const;
  std::vector<int> config_of(std::size_t cell) const;

  double sum() const;
  void scale(double s);

  /// Marginal over `keep` (result variables in the requested order).
  JointTable marginal(const std::vector<std::string>& keep) const;

  /// Pointwise multiply by a table over a subset of this table's variables.
  void multiply_in(const JointTable& factor);

  /// Pointwise divide; 0/0 yields 0 (messages over zero-mass separators).
  void divide_by_into(const JointTable& denom, JointTable& out) const;

  /// Zero every cell whose `var` coordinate differs from `level`.
  void condition(const std::string& var, int level);

  double at(std::span<const int> config) const { return probabilities[index_of(config)]; }
};

/// Cell count of a joint table over these variables (product of level counts).
std::size_t table_cells(std::span<const VariableMeta> vars);

}  // namespace bninfo
