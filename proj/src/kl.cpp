// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/kl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "bninfo/entropy.hpp"
#include "bninfo/junction_tree.hpp"
#include "bninfo/order.hpp"
#include "bninfo/parallel.hpp"
#include "bninfo/subnet.hpp"
#include "bninfo/validate.hpp"

namespace bninfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_discrete_variables(const Network& a, const Network& b) {
  if (a.dag.node_count() != b.dag.node_count())
    throw error("kl: networks have different variable counts");
  for (const auto& meta : a.dag.nodes) {
    int j = b.dag.index_of(meta.name);
    if (j < 0) throw error("kl: variable " + meta.name + " missing from the second network");
    const auto& other = b.dag.nodes[j];
    if (meta.kind != other.kind) throw error("kl: variable " + meta.name + " changes kind");
    if (meta.kind == VarKind::discrete && meta.levels != other.levels)
      throw error("kl: variable " + meta.name + " has different levels");
  }
}

GaussianGlobal reordered_global(const GaussianGlobal& g, const std::vector<std::string>& vars) {
  if (g.variables == vars) return g;
  std::vector<int> pos;
  for (const auto& v : vars) {
    auto it = std::find(g.variables.begin(), g.variables.end(), v);
    if (it == g.variables.end()) throw error("kl: variable " + v + " missing from global");
    pos.push_back(static_cast<int>(it - g.variables.begin()));
  }
  GaussianGlobal out;
  out.variables = vars;
  out.mean.resize(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) out.mean[i] = g.mean[pos[i]];
  out.covariance = permute_sym(g.covariance, pos);
  return out;
}

double quadratic_form(const Matrix& m, std::span<const double> d) {
  double q = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * d[j];
    q += s * d[i];
  }
  return q;
}

double dot_trace(const Matrix& a, const Matrix& b) {
  // tr(a b) for symmetric a, b.
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  return s;
}

double sum_log_diag(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::log(m(i, i));
  return s;
}

// tr(Sigma^-1) straight from the local parameters: the precision matrix of a
// GBN has diagonal 1/sigma_i^2 + sum over children j of beta_{j,i}^2 / sigma_j^2.
double trace_precision(const Network& net) {
  double s = 0.0;
  for (const auto& meta : net.dag.nodes) {
    const GaussianLocal& g = net.gaussian(meta.name);
    s += 1.0 / g.variance;
    for (const auto& [pname, beta] : g.coefficients) {
      (void)pname;
      s += beta * beta / g.variance;
    }
  }
  return s;
}

}  // namespace

const char* to_string(KlMethod m) {
  switch (m) {
    case KlMethod::discrete: return "discrete";
    case KlMethod::exact_global: return "exact-global";
    case KlMethod::exact_sparse: return "exact-sparse";
    case KlMethod::spectral: return "spectral";
    case KlMethod::bounds: return "bounds";
    case KlMethod::empirical: return "empirical";
    case KlMethod::clg_naive: return "clg-naive";
    case KlMethod::clg_sparse: return "clg-sparse";
  }
  return "?";
}

KlReport kl_discrete(const Network& b, const Network& b2) {
  require_valid(b);
  require_valid(b2);
  require_same_discrete_variables(b, b2);

  JunctionTree jt = JunctionTree::build(b);
  jt.calibrate();
  const EntropyReport h_b = entropy_discrete(b, jt);

  KlReport rep;
  rep.method = KlMethod::discrete;
  std::vector<double> per_node;
  double cross_entropy = 0.0;
  bool infinite = false;

  for (const auto& meta : b.dag.nodes) {
    const Cpt& cpt2 = b2.cpt(meta.name);
    std::vector<std::string> query = cpt2.parents;
    query.push_back(meta.name);
    const JointTable joint = jt.query_marginal(query);  // (parents2..., X_i), X_i fastest

    double node_cross = 0.0;
    for (int j = 0; j < cpt2.cols && !infinite; ++j) {
      for (int k = 0; k < cpt2.rows; ++k) {
        const double p = joint.probabilities[static_cast<std::size_t>(j) * cpt2.rows + k];
        if (p <= 0.0) continue;
        const double q = cpt2.at(k, j);
        if (q <= 0.0) {
          infinite = true;
          std::ostringstream os;
          os << "zero probability in second network at " << meta.name << "="
             << meta.levels[k] << " given parent configuration " << j;
          rep.note = os.str();
          break;
        }
        node_cross -= p * std::log(q);
      }
    }
    if (infinite) break;
    per_node.push_back(node_cross);
    cross_entropy += node_cross;
  }

  rep.diagnostics["entropy"] = h_b.total;
  if (infinite) {
    rep.value = kInf;
    rep.diagnostics["cross_entropy"] = kInf;
    return rep;
  }
  rep.diagnostics["cross_entropy"] = cross_entropy;
  rep.vectors["per_node_cross_entropy"] = std::move(per_node);
  rep.value = cross_entropy - h_b.total;
  return rep;
}

SpectralFactor spectral_factor(const Matrix& covariance) {
  SymEigen eig = sym_eigen(covariance);
  for (double v : eig.values)
    if (!(v > 0.0)) throw error("spectral_factor: covariance is not positive definite");
  return {std::move(eig.values), std::move(eig.vectors)};
}

KlReport kl_mvn(const GaussianGlobal& a, const GaussianGlobal& b, MvnRoute route) {
  if (a.variables.size() != b.variables.size()) throw error("kl_mvn: dimension mismatch");
  const GaussianGlobal q = reordered_global(b, a.variables);
  const std::size_t n = a.variables.size();

  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = q.mean[i] - a.mean[i];

  KlReport rep;
  double trace, quad, log_det_a, log_det_b;
  if (route == MvnRoute::direct) {
    rep.method = KlMethod::exact_global;
    const Matrix inv = spd_inverse(q.covariance);
    trace = dot_trace(inv, a.covariance);
    quad = quadratic_form(inv, diff);
    log_det_a = log_det_spd(a.covariance);
    log_det_b = log_det_spd(q.covariance);
  } else {
    rep.method = KlMethod::spectral;
    const SpectralFactor fa = spectral_factor(a.covariance);
    const SpectralFactor fb = spectral_factor(q.covariance);
    log_det_a = 0.0;
    for (double v : fa.eigenvalues) log_det_a += std::log(v);
    log_det_b = 0.0;
    for (double v : fb.eigenvalues) log_det_b += std::log(v);

    // tr(Sigma_q^-1 Sigma_a) = sum_k u_k^T Sigma_a u_k / lambda_k and the
    // quadratic form likewise, straight from (U, Lambda).
    trace = 0.0;
    quad = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> u(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = fb.eigenvectors(i, k);
      double usu = 0.0, ud = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a.covariance(i, j) * u[j];
        usu += u[i] * s;
        ud += u[i] * diff[i];
      }
      trace += usu / fb.eigenvalues[k];
      quad += ud * ud / fb.eigenvalues[k];
    }
    rep.vectors["eigenvalues"] = fa.eigenvalues;
    rep.vectors["eigenvalues_second"] = fb.eigenvalues;
  }

  rep.diagnostics["trace"] = trace;
  rep.diagnostics["quadratic_form"] = quad;
  rep.diagnostics["log_det_ratio"] = log_det_b - log_det_a;
  rep.value =
      0.5 * (trace + quad - static_cast<double>(n) + log_det_b - log_det_a);
  return rep;
}

KlReport kl_gbn_sparse(const Network& b, const Network& b2) {
  require_valid(b);
  require_valid(b2);
  auto [cb, mu_b] = build_factor(b);
  auto [cb2, mu_b2] = build_factor(b2);
  const std::size_t n = cb.order.size();

  // Realign b's factor rows and mean to b2's node ordering. Columns keep b's
  // ordering: the Frobenius norm and the whitened mean are unaffected.
  Matrix c_star(n, n);
  std::vector<double> mu_star(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(cb.order.begin(), cb.order.end(), cb2.order[i]);
    if (it == cb.order.end()) throw error("kl_gbn_sparse: variable sets differ");
    const auto row = static_cast<std::size_t>(it - cb.order.begin());
    for (std::size_t j = 0; j < n; ++j) c_star(i, j) = cb.matrix(row, j);
    mu_star[i] = mu_b[row];
    diff[i] = mu_b2[i] - mu_star[i];
  }

  const Matrix c2_inv = invert_lower_triangular(cb2.matrix);
  const double frob = frobenius_sq(matmul(c2_inv, c_star));

  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += c2_inv(i, j) * diff[j];
    w[i] = s;
  }
  double quad = 0.0;
  for (double v : w) quad += v * v;

  const double log_det_ratio = 2.0 * (sum_log_diag(cb2.matrix) - sum_log_diag(cb.matrix));

  KlReport rep;
  rep.method = KlMethod::exact_sparse;
  rep.diagnostics["frobenius"] = frob;
  rep.diagnostics["quadratic_form"] = quad;
  rep.diagnostics["log_det_ratio"] = log_det_ratio;
  rep.vectors["whitened_mean_diff"] = std::move(w);
  rep.value = 0.5 * (frob + quad - static_cast<double>(n) + log_det_ratio);
  return rep;
}

std::pair<TraceBounds, KlReport> kl_gbn_bounds(const Network& b, const Network& b2) {
  require_valid(b);
  require_valid(b2);
  auto [cb, mu_b] = build_factor(b);
  auto [cb2, mu_b2] = build_factor(b2);
  const std::size_t n = cb.order.size();

  const double log_det_b = 2.0 * sum_log_diag(cb.matrix);
  const double log_det_b2 = 2.0 * sum_log_diag(cb2.matrix);

  TraceBounds bounds;
  bounds.lower = -log_det_b2 + log_det_b + static_cast<double>(n);
  // |C2^-1|_F^2 |C|_F^2 = tr(Sigma2^-1) tr(Sigma); both factors come from
  // O(N^2) scans, no inversion.
  const double tr_inv = trace_precision(b2);
  const double tr_cov = frobenius_sq(cb.matrix);
  bounds.upper = tr_inv * tr_cov;

  KlReport rep;
  rep.method = KlMethod::bounds;
  if (bounds.lower > 0.0) {
    bounds.point_estimate = std::sqrt(bounds.lower * bounds.upper);
  } else {
    bounds.point_estimate = bounds.upper;
    rep.note = "trace lower bound not positive; point estimate falls back to the upper bound";
  }

  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(cb.order.begin(), cb.order.end(), cb2.order[i]);
    if (it == cb.order.end()) throw error("kl_gbn_bounds: variable sets differ");
    diff[i] = mu_b2[i] - mu_b[static_cast<std::size_t>(it - cb.order.begin())];
  }
  const std::vector<double> w = lower_tri_solve(cb2.matrix, diff);
  double quad = 0.0;
  for (double v : w) quad += v * v;

  rep.diagnostics["trace_lower"] = bounds.lower;
  rep.diagnostics["trace_upper"] = bounds.upper;
  rep.diagnostics["trace_point_estimate"] = bounds.point_estimate;
  rep.diagnostics["quadratic_form"] = quad;
  rep.diagnostics["log_det_ratio"] = log_det_b2 - log_det_b;
  rep.value = 0.5 * (bounds.point_estimate + quad - static_cast<double>(n) +
                     log_det_b2 - log_det_b);
  return {bounds, rep};
}

KlReport kl_gbn_empirical(const Network& b, const FitSummary& fit_b, const Network& b2,
                          const FitSummary& fit_b2) {
  (void)shared_total_order(b.dag, b2.dag);  // throws when incompatible
  if (fit_b.n != fit_b2.n) throw error("kl_gbn_empirical: fits have different sample sizes");
  const double n = static_cast<double>(fit_b.n);
  if (fit_b.n == 0) throw error("kl_gbn_empirical: empty fit");

  KlReport rep;
  rep.method = KlMethod::empirical;
  std::vector<double> per_node;
  for (const auto& meta : b.dag.nodes) {
    const auto it_b = fit_b.nodes.find(meta.name);
    const auto it_b2 = fit_b2.nodes.find(meta.name);
    if (it_b == fit_b.nodes.end() || it_b2 == fit_b2.nodes.end())
      throw error("kl_gbn_empirical: no fit for node " + meta.name);
    const auto& f = it_b->second;
    const auto& f2 = it_b2->second;

    // Fitted values when present, residuals otherwise (identical difference).
    const auto& u = f.fitted.empty() ? f.residuals : f.fitted;
    const auto& v = f2.fitted.empty() ? f2.residuals : f2.fitted;
    if (u.size() != fit_b.n || v.size() != fit_b.n)
      throw error("kl_gbn_empirical: fitted vector length mismatch for " + meta.name);
    double norm2 = 0.0;
    for (std::size_t r = 0; r < u.size(); ++r) {
      const double d = u[r] - v[r];
      norm2 += d * d;
    }

    const double term = 0.5 * (std::log(f2.sigma2 / f.sigma2) + f.sigma2 / f2.sigma2 - 1.0) +
                        norm2 / (2.0 * n * f2.sigma2);
    per_node.push_back(term);
    rep.value += term;
  }
  rep.diagnostics["n"] = n;
  rep.vectors["per_node_terms"] = std::move(per_node);
  return rep;
}

KlReport kl_clgbn(const Network& b, const Network& b2, ClgMethod method) {
  require_valid(b);
  require_valid(b2);
  if (b.kind != NetworkKind::clg || b2.kind != NetworkKind::clg)
    throw error("kl_clgbn: both networks must be CLG");
  require_same_discrete_variables(b, b2);

  const Network bd = discrete_spanning_subnetwork(b);
  const Network b2d = discrete_spanning_subnetwork(b2);
  const KlReport discrete_rep = kl_discrete(bd, b2d);

  KlReport rep;
  rep.method = method == ClgMethod::naive ? KlMethod::clg_naive : KlMethod::clg_sparse;
  rep.diagnostics["discrete_part"] = discrete_rep.value;
  if (std::isinf(discrete_rep.value)) {
    rep.value = kInf;
    rep.note = discrete_rep.note;
    return rep;
  }

  double continuous = 0.0;
  if (method == ClgMethod::naive) {
    const MixtureGlobal mix_b = compose_clgbn(b);
    const MixtureGlobal mix_b2 = compose_clgbn(b2);
    const JointTable& joint = mix_b.discrete_joint;

    auto component_of = [](const MixtureGlobal& mix, const JointTable& full,
                           const std::vector<int>& config) {
      std::vector<int> sub;
      for (const auto& var : mix.identifying_set) {
        const int pos = full.position_of(var.name);
        sub.push_back(config[pos]);
      }
      JointTable index(mix.identifying_set);
      return index.index_of(sub);
    };

    std::vector<double> terms(joint.cell_count(), 0.0);
    parallel::for_range(joint.cell_count(), [&](std::size_t cell) {
      const double w = joint.probabilities[cell];
      if (w == 0.0) return;
      const std::vector<int> config = joint.config_of(cell);
      const auto ka = component_of(mix_b, joint, config);
      const auto kb = component_of(mix_b2, joint, config);
      terms[cell] = w * kl_mvn(mix_b.components[ka], mix_b2.components[kb]).value;
    });
    for (double t : terms) continuous += t;
    rep.vectors["component_weights"] = joint.probabilities;
  } else {
    // Union of the two delta sets, in b's node order.
    std::set<int> ids;
    for (const auto& name : delta_union(b)) ids.insert(b.dag.require(name));
    for (const auto& name : delta_union(b2)) ids.insert(b.dag.require(name));
    std::vector<std::string> u;
    for (int id : ids) u.push_back(b.dag.nodes[id].name);

    const ClgSubnetworks sub_b = extract_subnetworks(b, u);
    const ClgSubnetworks sub_b2 = extract_subnetworks(b2, u);

    std::vector<double> weights;
    if (u.empty()) {
      weights = {1.0};
    } else {
      JunctionTree jt = JunctionTree::build(bd);
      jt.calibrate();
      weights = jt.query_marginal(u).probabilities;
    }

    // Map configuration indices between the two extractions (their
    // config_vars may be ordered differently).
    const JointTable idx_b(sub_b.config_vars);
    const JointTable idx_b2(sub_b2.config_vars);
    std::vector<int> pos_in_b(sub_b2.config_vars.size());
    for (std::size_t k = 0; k < sub_b2.config_vars.size(); ++k) {
      int pos = -1;
      for (std::size_t l = 0; l < sub_b.config_vars.size(); ++l)
        if (sub_b.config_vars[l].name == sub_b2.config_vars[k].name) pos = static_cast<int>(l);
      pos_in_b[k] = pos;
    }

    std::vector<double> comp_kl(weights.size(), 0.0);
    parallel::for_range(weights.size(), [&](std::size_t cfg) {
      if (weights[cfg] == 0.0) return;
      const std::vector<int> config = idx_b.config_of(cfg);
      std::vector<int> config2(pos_in_b.size());
      for (std::size_t k = 0; k < pos_in_b.size(); ++k) config2[k] = config[pos_in_b[k]];
      comp_kl[cfg] = kl_gbn_sparse(sub_b.gaussian_parts[cfg],
                                   sub_b2.gaussian_parts[idx_b2.index_of(config2)])
                         .value;
    });
    for (std::size_t cfg = 0; cfg < weights.size(); ++cfg)
      continuous += weights[cfg] * comp_kl[cfg];
    rep.vectors["component_weights"] = weights;
    rep.vectors["component_kl"] = comp_kl;
  }

  rep.diagnostics["continuous_part"] = continuous;
  rep.value = discrete_rep.value + continuous;
  return rep;
}

}  // namespace bninfo
