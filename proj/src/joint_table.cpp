// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/joint_table.hpp"

#include <algorithm>
#include <numeric>

namespace bninfo {

std::size_t table_cells(std::span<const VariableMeta> vars) {
  std::size_t n = 1;
  for (const auto& v : vars) n *= static_cast<std::size_t>(v.level_count());
  return n;
}

JointTable::JointTable(std::vector<VariableMeta> vars, double fill)
    : variables(std::move(vars)),
      probabilities(table_cells(variables), fill) {}

int JointTable::position_of(const std::string& name) const {
  for (int i = 0; i < var_count(); ++i)
    if (variables[i].name == name) return i;
  return -1;
}

std::size_t JointTable::index_of(std::span<const int> config) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < config.size(); ++k)
    idx = idx * static_cast<std::size_t>(variables[k].level_count()) +
          static_cast<std::size_t>(config[k]);
  return idx;
}

std::vector<int> JointTable::config_of(std::size_t cell) const {
  std::vector<int> config(variables.size());
  for (int k = var_count() - 1; k >= 0; --k) {
    const auto r = static_cast<std::size_t>(variables[k].level_count());
    config[k] = static_cast<int>(cell % r);
    cell /= r;
  }
  return config;
}

double JointTable::sum() const {
  double s = 0.0;
  for (double p : probabilities) s += p;
  return s;
}

void JointTable::scale(double s) {
  for (double& p : probabilities) p *= s;
}

JointTable JointTable::marginal(const std::vector<std::string>& keep) const {
  std::vector<VariableMeta> vars;
  std::vector<int> positions;
  for (const auto& name : keep) {
    int pos = position_of(name);
    if (pos < 0) throw error("marginal: variable " + name + " not in table");
    vars.push_back(variables[pos]);
    positions.push_back(pos);
  }
  JointTable out(std::move(vars));
  std::vector<int> sub(positions.size());
  for (std::size_t cell = 0; cell < probabilities.size(); ++cell) {
    const std::vector<int> config = config_of(cell);
    for (std::size_t k = 0; k < positions.size(); ++k) sub[k] = config[positions[k]];
    out.probabilities[out.index_of(sub)] += probabilities[cell];
  }
  return out;
}

void JointTable::multiply_in(const JointTable& factor) {
  std::vector<int> positions;
  positions.reserve(factor.variables.size());
  for (const auto& v : factor.variables) {
    int pos = position_of(v.name);
    if (pos < 0) throw error("multiply_in: variable " + v.name + " not in table");
    positions.push_back(pos);
  }
  std::vector<int> sub(positions.size());
  for (std::size_t cell = 0; cell < probabilities.size(); ++cell) {
    const std::vector<int> config = config_of(cell);
    for (std::size_t k = 0; k < positions.size(); ++k) sub[k] = config[positions[k]];
    probabilities[cell] *= factor.probabilities[factor.index_of(sub)];
  }
}

void JointTable::divide_by_into(const JointTable& denom, JointTable& out) const {
  out = *this;
  for (std::size_t cell = 0; cell < probabilities.size(); ++cell) {
    double d = denom.probabilities[cell];
    out.probabilities[cell] = d == 0.0 ? 0.0 : probabilities[cell] / d;
  }
}

void JointTable::condition(const std::string& var, int level) {
  int pos = position_of(var);
  if (pos < 0) throw error("condition: variable " + var + " not in table");
  for (std::size_t cell = 0; cell < probabilities.size(); ++cell)
    if (config_of(cell)[pos] != level) probabilities[cell] = 0.0;
}

}  // namespace bninfo
