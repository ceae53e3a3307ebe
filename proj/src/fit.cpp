// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bninfo/joint_table.hpp"
#include "bninfo/matrix.hpp"

namespace bninfo {

namespace {

// Solve A x = b for SPD A via its Cholesky factor.
std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b) {
  const Matrix l = cholesky_lower(a);
  std::vector<double> y = lower_tri_solve(l, b);
  // Back substitution with L^T.
  const std::size_t n = y.size();
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= l(j, ii) * x[j];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

std::string config_label(const std::vector<VariableMeta>& vars, std::span<const int> config) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < config.size(); ++k) {
    if (k) os << ", ";
    os << vars[k].name << "=" << vars[k].levels[config[k]];
  }
  os << ")";
  return os.str();
}

Cpt fit_cpt(const Dag& dag, const Dataset& data, int node,
            const std::vector<int>& parents) {
  const auto& meta = dag.nodes[node];
  Cpt cpt;
  cpt.child = meta.name;
  cpt.rows = meta.level_count();

  std::vector<VariableMeta> parent_vars;
  std::vector<int> parent_cols, parent_levels;
  for (int p : parents) {
    cpt.parents.push_back(dag.nodes[p].name);
    parent_vars.push_back(dag.nodes[p]);
    parent_cols.push_back(data.column_of(dag.nodes[p].name));
    parent_levels.push_back(dag.nodes[p].level_count());
  }
  cpt.cols = static_cast<int>(table_cells(parent_vars));
  cpt.table.assign(static_cast<std::size_t>(cpt.rows) * cpt.cols, 0.0);

  const int child_col = data.column_of(meta.name);
  std::vector<double> counts(static_cast<std::size_t>(cpt.rows) * cpt.cols, 0.0);
  std::vector<int> pconfig(parents.size());
  for (std::size_t r = 0; r < data.row_count(); ++r) {
    for (std::size_t k = 0; k < parents.size(); ++k)
      pconfig[k] = data.level_at(r, parent_cols[k]);
    const auto j = Cpt::config_index(parent_levels, pconfig);
    counts[static_cast<std::size_t>(data.level_at(r, child_col)) * cpt.cols + j] += 1.0;
  }
  for (int j = 0; j < cpt.cols; ++j) {
    double total = 0.0;
    for (int k = 0; k < cpt.rows; ++k) total += counts[static_cast<std::size_t>(k) * cpt.cols + j];
    if (total == 0.0) {
      JointTable index(parent_vars);
      throw error("fit_mle: unseen parent configuration for node " + meta.name + " at " +
                  config_label(parent_vars, index.config_of(j)));
    }
    for (int k = 0; k < cpt.rows; ++k)
      cpt.at(k, j) = counts[static_cast<std::size_t>(k) * cpt.cols + j] / total;
  }
  return cpt;
}

// Ordinary least squares of `node` on `predictors` over the given rows.
// Returns the fitted local plus per-row fitted values and residuals; the
// variance uses divisor n (maximum likelihood), not n - p.
GaussianLocal fit_ols(const Dag& dag, const Dataset& data, int node,
                      const std::vector<int>& predictors, const std::vector<std::size_t>& rows,
                      std::vector<double>& fitted, std::vector<double>& residuals) {
  const auto& meta = dag.nodes[node];
  const std::size_t n = rows.size();
  const std::size_t p = predictors.size() + 1;

  const int ycol = data.column_of(meta.name);
  std::vector<int> xcols;
  for (int pr : predictors) xcols.push_back(data.column_of(dag.nodes[pr].name));

  Matrix xtx(p, p);
  std::vector<double> xty(p, 0.0);
  std::vector<double> xrow(p);
  for (std::size_t r : rows) {
    xrow[0] = 1.0;
    for (std::size_t k = 0; k < predictors.size(); ++k) xrow[k + 1] = data.value_at(r, xcols[k]);
    const double y = data.value_at(r, ycol);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j <= i; ++j) xtx(i, j) += xrow[i] * xrow[j];
      xty[i] += xrow[i] * y;
    }
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) xtx(i, j) = xtx(j, i);

  std::vector<double> beta;
  try {
    beta = solve_spd(xtx, xty);
  } catch (const error&) {
    throw error("fit_mle: singular regression design for node " + meta.name);
  }

  GaussianLocal g;
  g.child = meta.name;
  g.intercept = beta[0];
  for (std::size_t k = 0; k < predictors.size(); ++k)
    g.coefficients.emplace_back(dag.nodes[predictors[k]].name, beta[k + 1]);

  double rss = 0.0;
  for (std::size_t r : rows) {
    double yhat = beta[0];
    for (std::size_t k = 0; k < predictors.size(); ++k)
      yhat += beta[k + 1] * data.value_at(r, xcols[k]);
    const double res = data.value_at(r, ycol) - yhat;
    fitted[r] = yhat;
    residuals[r] = res;
    rss += res * res;
  }
  g.variance = rss / static_cast<double>(n);
  if (!(g.variance > 0.0))
    throw error("fit_mle: zero residual variance for node " + meta.name);
  return g;
}

}  // namespace

FitResult fit_mle(const Dag& dag, const Dataset& data, NetworkKind kind) {
  for (const auto& meta : dag.nodes) {
    const int col = data.column_of(meta.name);
    if (col < 0) throw error("fit_mle: dataset has no column " + meta.name);
    const auto& dmeta = data.columns[col];
    if (dmeta.kind != meta.kind) throw error("fit_mle: column kind mismatch for " + meta.name);
    if (meta.kind == VarKind::discrete && dmeta.levels != meta.levels)
      throw error("fit_mle: level mismatch for " + meta.name);
  }
  if (data.row_count() == 0) throw error("fit_mle: empty dataset");

  FitResult out;
  out.net.kind = kind;
  out.net.dag = dag;
  out.summary.n = data.row_count();

  std::vector<std::size_t> all_rows(data.row_count());
  for (std::size_t r = 0; r < all_rows.size(); ++r) all_rows[r] = r;

  for (int i = 0; i < dag.node_count(); ++i) {
    const auto& meta = dag.nodes[i];
    const std::vector<int> parents = dag.parents_of(i);

    if (meta.kind == VarKind::discrete) {
      out.net.locals.emplace(meta.name, fit_cpt(dag, data, i, parents));
      continue;
    }

    std::vector<int> dparents, cparents;
    for (int p : parents)
      (dag.nodes[p].kind == VarKind::discrete ? dparents : cparents).push_back(p);

    FitSummary::PerNode pernode;
    pernode.fitted.assign(data.row_count(), 0.0);
    pernode.residuals.assign(data.row_count(), 0.0);

    if (kind == NetworkKind::gaussian || dparents.empty()) {
      GaussianLocal g =
          fit_ols(dag, data, i, cparents, all_rows, pernode.fitted, pernode.residuals);
      pernode.sigma2 = g.variance;
      if (kind == NetworkKind::gaussian) {
        out.net.locals.emplace(meta.name, std::move(g));
      } else {
        ClgLocal local;
        local.child = meta.name;
        for (int p : cparents) local.continuous_parents.push_back(dag.nodes[p].name);
        local.components.push_back(std::move(g));
        out.net.locals.emplace(meta.name, std::move(local));
      }
    } else {
      // One regression per configuration of the discrete parents; rows are
      // grouped by configuration first.
      ClgLocal local;
      local.child = meta.name;
      std::vector<VariableMeta> dvars;
      std::vector<int> dcols, dlevels;
      for (int p : dparents) {
        local.discrete_parents.push_back(dag.nodes[p].name);
        dvars.push_back(dag.nodes[p]);
        dcols.push_back(data.column_of(dag.nodes[p].name));
        dlevels.push_back(dag.nodes[p].level_count());
      }
      for (int p : cparents) local.continuous_parents.push_back(dag.nodes[p].name);

      const std::size_t n_configs = table_cells(dvars);
      std::vector<std::vector<std::size_t>> grouped(n_configs);
      std::vector<int> dconfig(dparents.size());
      for (std::size_t r = 0; r < data.row_count(); ++r) {
        for (std::size_t k = 0; k < dparents.size(); ++k) dconfig[k] = data.level_at(r, dcols[k]);
        grouped[Cpt::config_index(dlevels, dconfig)].push_back(r);
      }

      double rss = 0.0;
      JointTable index(dvars);
      for (std::size_t cfg = 0; cfg < n_configs; ++cfg) {
        if (grouped[cfg].empty())
          throw error("fit_mle: unseen parent configuration for node " + meta.name + " at " +
                      config_label(dvars, index.config_of(cfg)));
        local.components.push_back(fit_ols(dag, data, i, cparents, grouped[cfg],
                                           pernode.fitted, pernode.residuals));
      }
      for (double res : pernode.residuals) rss += res * res;
      pernode.sigma2 = rss / static_cast<double>(data.row_count());
      out.net.locals.emplace(meta.name, std::move(local));
    }
    out.summary.nodes.emplace(meta.name, std::move(pernode));
  }
  return out;
}

}  // namespace bninfo
